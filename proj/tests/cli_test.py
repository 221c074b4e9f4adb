"""End-to-end tests of the z4ca command line: determinism, construct/verify round trips,
exit codes and the thin wrapper subcommands."""

import hashlib
import itertools
import json
import os
import subprocess
import sys
import tempfile
import unittest

BIN = None

PASS, CHECK_FAILED, USAGE = 0, 1, 2


def run(*args):
    return subprocess.run([BIN, *map(str, args)], capture_output=True, text=True, timeout=600)


def sha256(path):
    with open(path, "rb") as f:
        return hashlib.sha256(f.read()).hexdigest()


def write_words(path, m, h, words):
    with open(path, "w") as f:
        f.write(f"# m={m} h={h}\n")
        for w in words:
            f.write("".join(map(str, w)) + "\n")


def read_words(path):
    with open(path) as f:
        lines = [ln.strip() for ln in f if ln.strip() and not ln.startswith("#")]
    return [[int(c) for c in ln] for ln in lines]


def mm_bent(k, sigma, h):
    """Binary Maiorana-McFarland word sigma(x).y + h(x); x in the low k index bits."""
    n = 1 << k
    return [(bin(sigma[x] & y).count("1") + h[x]) % 2 for y in range(n) for x in range(n)]


def binary_bent_coset_m4():
    """x0 x1 + x2 x3 plus every affine function on F^4."""
    words = []
    for c, e in itertools.product(range(16), range(2)):
        words.append([((x & 1) & (x >> 1 & 1)) ^ ((x >> 2 & 1) & (x >> 3 & 1)) ^ (bin(c & x).count("1") & 1) ^ e
                      for x in range(16)])
    return words


# (name, t, m values written in full, m values checked through --meta-only)
ROUND_TRIPS = [
    ("mf", None, [2, 4], [6, 8]),
    ("mf-zrm", None, [2, 4], [6, 8]),
    ("coset", None, list(range(1, 11)), list(range(11, 17))),
    ("zrm2", None, [2, 3, 4, 5], [6]),
    ("kerdock", None, list(range(2, 8)), list(range(8, 11))),
    ("dg", 1, [3, 4, 5, 6], [7, 8]),
    ("dg", 2, [5], [6, 7]),
]


class CliTest(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = self._tmp.name

    def tearDown(self):
        self._tmp.cleanup()

    def path(self, name):
        return os.path.join(self.tmp, name)

    def test_determinism(self):
        digests = []
        for rep in range(2):
            out = self.path(f"k{rep}.z4")
            r = run("--seed", 7, "construct", "--name", "zrm2", "--m", 5, "--out", out)
            self.assertEqual(r.returncode, PASS, r.stderr)
            digests.append((sha256(out), sha256(out + ".json"), r.stdout))
        self.assertEqual(digests[0], digests[1])
        sampled = [run("--seed", 3, "construct", "--name", "dg", "--m", 7, "--t", 2, "--meta-only", "--samples", 2000).stdout
                   for _ in range(2)]
        self.assertEqual(sampled[0], sampled[1])
        self.assertIn("d_L<=", sampled[0])

    def test_round_trip_every_construction(self):
        for name, t, full, meta in ROUND_TRIPS:
            targs = ["--t", t] if t is not None else []
            for m in full:
                with self.subTest(name=name, t=t, m=m):
                    out = self.path(f"{name}-{t}-{m}.z4")
                    r = run("construct", "--name", name, "--m", m, *targs, "--out", out)
                    self.assertEqual(r.returncode, PASS, r.stdout + r.stderr)
                    with open(out + ".json") as f:
                        meta_json = json.load(f)
                    self.assertEqual(meta_json["papr"], "1/1")
                    self.assertEqual(len(read_words(out)), int(meta_json["size"]))
                    checks = "papr,bent,spectrum-form" + (",degree-bound" if m > 2 else "")
                    v = run("verify", "--in", out, "--checks", checks)
                    self.assertEqual(v.returncode, PASS, v.stdout[-500:] + v.stderr)
                    self.assertTrue(v.stdout.strip().endswith(f"PASS {meta_json['size']} words"))
            for m in meta:
                with self.subTest(name=name, t=t, m=m, meta_only=True):
                    r = run("--json", "construct", "--name", name, "--m", m, *targs, "--meta-only")
                    self.assertEqual(r.returncode, PASS, r.stderr)
                    res = json.loads(r.stdout)["results"]
                    self.assertEqual(res["m"], m)
                    if "papr" in res:
                        self.assertEqual(res["papr"], "1/1")

    def test_construct_examples(self):
        r = run("--json", "construct", "--name", "kerdock", "--m", 4, "--meta-only")
        res = json.loads(r.stdout)["results"]
        self.assertEqual((res["rate"], res["d_L"], res["distance_relation"]), ("9/16", 12, "="))
        r = run("--json", "construct", "--name", "zrm2", "--m", 5, "--meta-only")
        res = json.loads(r.stdout)["results"]
        self.assertEqual((res["rate"], res["d_L"]), ("20/32", 16))
        # Sampled pairs bound the distance from above; the container ZRM(2,6) bounds it from below.
        r = run("--json", "construct", "--name", "zrm2", "--m", 6, "--meta-only")
        res = json.loads(r.stdout)["results"]
        self.assertEqual((res["rate"], res["d_L"], res["distance_relation"]), ("27/64", 32, "="))
        self.assertTrue(res["distance_method"].endswith("+container-zrm(2,6)"))
        out = self.path("c9.z4")
        r = run("construct", "--name", "coset", "--m", 9, "--out", out)
        self.assertEqual(r.returncode, PASS, r.stderr)
        self.assertEqual(len(read_words(out)), 2 ** 11)
        self.assertIn("papr=1/1", r.stdout)

    def test_full_kerdock_code_is_not_constant_amplitude(self):
        out = self.path("k3.z4")
        r = run("construct", "--name", "kerdock-code", "--m", 3, "--out", out)
        self.assertEqual(r.returncode, CHECK_FAILED)
        v = run("verify", "--in", out, "--checks", "papr")
        self.assertEqual(v.returncode, CHECK_FAILED)
        self.assertIn("FAIL word", v.stdout)

    def test_verify_failures(self):
        zero = self.path("zero.z4")
        write_words(zero, 2, 2, [[0, 1, 1, 2], [0, 0, 0, 0]])
        v = run("verify", "--in", zero, "--checks", "papr")
        self.assertEqual(v.returncode, CHECK_FAILED)
        self.assertIn("FAIL word 1", v.stdout)
        self.assertIn("papr=16/4", v.stdout)
        j = json.loads(run("--json", "verify", "--in", zero).stdout)
        self.assertFalse(j["results"]["pass"])
        self.assertEqual(j["inputs"][0]["path"], zero)

        odd = self.path("odd.z2")
        write_words(odd, 3, 1, [[0, 0, 0, 1, 0, 1, 1, 1]])
        v = run("verify", "--in", odd, "--checks", "bent")
        self.assertEqual(v.returncode, CHECK_FAILED)

    def test_usage_and_parse_errors(self):
        bad = self.path("bad.z4")
        with open(bad, "w") as f:
            f.write("# m=2 h=2\n0123\n01\n")
        r = run("verify", "--in", bad)
        self.assertEqual(r.returncode, USAGE)
        self.assertIn("line 3", r.stderr)
        for args in (["construct", "--name", "nope", "--m", 4, "--meta-only"],
                     ["construct", "--name", "coset", "--m", 4],
                     ["construct", "--name", "zrm2", "--m", 7, "--meta-only"],
                     ["construct", "--name", "dg", "--m", 4, "--t", 2, "--meta-only"],
                     ["construct", "--name", "dg", "--m", 7, "--t", 3, "--meta-only"],
                     ["construct", "--name", "zrm2", "--m", 6, "--out", self.path("x"), "--max-words", 1000],
                     ["table1", "--m", 7],
                     ["verify", "--in", self.path("missing")],
                     ["verify", "--in", bad, "--checks", "bogus"],
                     ["frobnicate"],
                     []):
            with self.subTest(args=args):
                self.assertEqual(run(*args).returncode, USAGE)

    def test_gray(self):
        q = self.path("q.z4")
        write_words(q, 2, 2, [[0, 1, 2, 3]])
        b = self.path("q.z2")
        self.assertEqual(run("gray", "--in", q, "--out", b).returncode, PASS)
        self.assertEqual(read_words(b), [[0, 0, 0, 1, 1, 1, 1, 0]])
        back = self.path("back.z4")
        self.assertEqual(run("gray", "--in", b, "--inverse", "--out", back).returncode, PASS)
        self.assertEqual(read_words(back), [[0, 1, 2, 3]])

    def test_dist(self):
        code = self.path("rm4.z4")
        self.assertEqual(run("codes", "gen", "--family", "rm4", "--r", 1, "--m", 3, "--out", code).returncode, PASS)
        r = run("dist", "--in", code)
        self.assertEqual(r.returncode, PASS)
        self.assertEqual(r.stdout.strip().split()[-1], "4")

    def test_lift_even_on_mm_bent(self):
        a, b = self.path("a.z2"), self.path("b.z2")
        write_words(a, 2, 1, [mm_bent(1, [0, 1], [0, 0]), mm_bent(1, [1, 0], [0, 1])])
        write_words(b, 2, 1, [mm_bent(1, [0, 1], [1, 1])])
        out = self.path("ab.z4")
        r = run("lift", "--rule", "even", "--in", a, "--in2", b, "--out", out, "--verify")
        self.assertEqual(r.returncode, PASS, r.stderr)
        self.assertEqual(len(read_words(out)), 2)
        v = run("verify", "--in", out, "--checks", "bent")
        self.assertEqual(v.returncode, PASS)

    def test_lift_rules_and_rejections(self):
        src = self.path("bent4.z2")
        write_words(src, 4, 1, binary_bent_coset_m4())
        for rule, size in (("odd-offset", 2 * 32 * 32), ("even", 32 * 32), ("gray-preimage", 32)):
            with self.subTest(rule=rule):
                out = self.path(rule + ".z4")
                r = run("lift", "--rule", rule, "--in", src, "--out", out, "--verify")
                self.assertEqual(r.returncode, PASS, r.stderr)
                self.assertEqual(len(read_words(out)), size)
        q = self.path("q.z4")
        write_words(q, 1, 2, [[0, 1]])
        self.assertEqual(run("lift", "--rule", "even", "--in", q).returncode, USAGE)
        self.assertEqual(run("lift", "--rule", "sideways", "--in", src).returncode, USAGE)

    def test_table1(self):
        r = run("table1", "--m", 4)
        self.assertEqual(r.returncode, PASS, r.stderr)
        lines = r.stdout.strip().splitlines()
        for row in ("6/16:16  PASS", "9/16:12  PASS", "14/16:8  PASS"):
            self.assertTrue(any(row in ln for ln in lines), row)
        self.assertIn("SKIPPED(out-of-scope)", r.stdout)
        r = run("table1", "--m", 5)
        self.assertEqual(r.returncode, PASS, r.stderr)
        self.assertEqual(sum("PASS" in ln for ln in r.stdout.splitlines()), 4)

    def test_table1_binary_ca_lifting(self):
        src = self.path("bent4.z2")
        write_words(src, 4, 1, binary_bent_coset_m4())
        r = run("table1", "--m", 4, "--binary-ca", src)
        self.assertEqual(r.returncode, PASS, r.stdout + r.stderr)
        self.assertIn("even", r.stdout)
        self.assertNotIn("FAIL", r.stdout)


if __name__ == "__main__":
    BIN = os.path.abspath(sys.argv.pop(1))
    unittest.main(verbosity=2)
