import io
import json
import logging
import unittest
from contextlib import redirect_stderr, redirect_stdout

logging.disable(logging.CRITICAL)

A1 = ["--type", "A1", "--lambda", "2", "--tau", "1"]


def _run(argv):
    from lsfan.main import main

    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


class CliOutputTests(unittest.TestCase):
    def test_degree(self):
        code, out, _ = _run(A1 + ["degree"])
        self.assertEqual(code, 0)
        self.assertEqual(out, '{"degree_by_bonds":2,"degree_by_hilbert":2}\n')

    def test_poset_json(self):
        code, out, _ = _run(A1 + ["poset"])
        self.assertEqual(code, 0)
        doc = json.loads(out)
        self.assertEqual(doc["case"]["lambda"], [2])
        self.assertEqual(doc["case"]["tau_label"], "1")
        self.assertEqual([n["label"] for n in doc["nodes"]], ["e", "1"])
        self.assertEqual(doc["covers"], [{"beta": [1], "bond": 2, "lower": "e", "upper": "1"}])
        self.assertEqual(doc["lcm_bonds"], 2)

    def test_poset_dot(self):
        code, out, _ = _run(A1 + ["poset", "--dot"])
        self.assertEqual(code, 0)
        self.assertIn('  "e" -> "1" [label="2"];\n', out)

    def test_output_is_deterministic(self):
        first = _run(A1 + ["lspaths", "--degree", "2"])
        second = _run(A1 + ["lspaths", "--degree", "2"])
        self.assertEqual(first, second)

    def test_lspaths(self):
        code, out, _ = _run(A1 + ["lspaths", "--degree", "1"])
        self.assertEqual(code, 0)
        doc = json.loads(out)
        self.assertEqual(doc["count"], 3)
        self.assertEqual(doc["paths"][1]["coefficients"], {"1": "1/2", "e": "1/2"})
        self.assertEqual(doc["paths"][1]["degree"], "1/1")

    def test_lspaths_degree_zero_on_identity(self):
        code, out, _ = _run(["--type", "A1", "--lambda", "2", "--tau", "", "lspaths", "--degree", "0"])
        self.assertEqual(code, 0)
        doc = json.loads(out)
        self.assertEqual(doc["count"], 1)
        self.assertEqual(doc["paths"][0]["coefficients"], {})

    def test_chains(self):
        code, out, _ = _run(["--type", "A3", "--lambda", "0,1,0", "chains"])
        self.assertEqual(code, 0)
        doc = json.loads(out)
        self.assertEqual(doc["count"], 2)
        self.assertTrue(all(c["bond_product"] == 1 for c in doc["chains"]))

    def test_character_check(self):
        code, out, _ = _run(A1 + ["character", "--degree", "2", "--check"])
        self.assertEqual(code, 0)
        doc = json.loads(out)
        self.assertEqual(doc["dimension"], 5)
        self.assertTrue(doc["check"])

    def test_decompose(self):
        code, out, _ = _run(A1 + ["decompose", "--path", '{"1": "3/2", "e": "1/2"}'])
        self.assertEqual(code, 0)
        doc = json.loads(out)
        self.assertEqual(
            [f["coefficients"] for f in doc["factors"]],
            [{"1": "1/1"}, {"1": "1/2", "e": "1/2"}],
        )
        self.assertTrue(doc["decomposable"])

    def test_standard_count(self):
        code, out, _ = _run(A1 + ["standard-count", "--degree", "2"])
        self.assertEqual(code, 0)
        doc = json.loads(out)
        self.assertEqual((doc["standard_monomials"], doc["ls_paths"]), (5, 5))

    def test_straighten(self):
        middle = '{"1": "1/2", "e": "1/2"}'
        code, out, _ = _run(A1 + ["straighten", "--a", middle, "--b", middle])
        self.assertEqual(code, 0)
        doc = json.loads(out)
        self.assertFalse(doc["monomial"]["standard"])
        self.assertEqual(len(doc["support"]), 1)
        term = doc["support"][0]
        self.assertTrue(term["guaranteed"])
        self.assertEqual([f["coefficients"] for f in term["factors"]], [{"1": "1/1"}, {"e": "1/1"}])

    def test_gcd_check(self):
        code, out, _ = _run(["--type", "A3", "--lambda", "0,1,0", "gcd-check"])
        self.assertEqual(code, 0)
        doc = json.loads(out)
        self.assertEqual(doc["pairs_checked"], 14)
        self.assertTrue(doc["ok"])

    def test_verify(self):
        code, out, _ = _run(A1 + ["--lattice-samples", "20", "verify", "--dmax", "2"])
        self.assertEqual(code, 0)
        doc = json.loads(out)
        self.assertTrue(doc["ok"])
        self.assertEqual([row["ls_paths"] for row in doc["degrees"]], [1, 3, 5])

    def test_verify_with_plus_reading_fails(self):
        code, out, _ = _run(
            A1 + ["--lattice-samples", "10", "--mult-one-sign", "plus", "verify", "--dmax", "1"]
        )
        self.assertEqual(code, 1)
        self.assertFalse(json.loads(out)["multiplicity_one_ok"])

    def test_verify_all_sigma(self):
        code, out, _ = _run(A1 + ["--lattice-samples", "10", "verify", "--dmax", "1", "--all-sigma"])
        self.assertEqual(code, 0)
        docs = json.loads(out)
        self.assertEqual([d["case"]["tau_label"] for d in docs], ["e", "1"])
        self.assertTrue(all(d["restriction_ok"] for d in docs))


class CliErrorTests(unittest.TestCase):
    def _error(self, argv):
        code, out, err = _run(argv)
        self.assertEqual(out, "")
        return code, json.loads(err.strip().splitlines()[-1])

    def test_bad_kind(self):
        code, doc = self._error(["--type", "X3", "--lambda", "1", "poset"])
        self.assertEqual(code, 2)
        self.assertEqual(doc["error"], "E_BAD_KIND")

    def test_not_dominant(self):
        code, doc = self._error(["--type", "A2", "--lambda=-1,1", "poset"])
        self.assertEqual(code, 2)
        self.assertEqual(doc["error"], "E_NOT_DOMINANT")

    def test_not_reduced(self):
        code, doc = self._error(["--type", "A2", "--lambda", "1,1", "--tau", "1 1", "poset"])
        self.assertEqual(code, 2)
        self.assertEqual(doc["error"], "E_NOT_REDUCED")

    def test_missing_case(self):
        code, doc = self._error(["degree"])
        self.assertEqual(code, 2)
        self.assertEqual(doc["error"], "E_BAD_CASE")

    def test_not_ls_path(self):
        code, doc = self._error(A1 + ["decompose", "--path", '{"e": "1/2"}'])
        self.assertEqual(code, 2)
        self.assertEqual(doc["error"], "E_NOT_LS_PATH")

    def test_standard_input(self):
        code, doc = self._error(A1 + ["straighten", "--a", '{"1": "1"}', "--b", '{"e": "1"}'])
        self.assertEqual(code, 2)
        self.assertEqual(doc["error"], "E_STANDARD_INPUT")

    def test_path_cap(self):
        code, doc = self._error(A1 + ["--max-paths", "2", "lspaths", "--degree", "2"])
        self.assertEqual(code, 3)
        self.assertEqual(doc["error"], "E_TOO_MANY")

    def test_character_of_a_huge_weight_hits_the_cap(self):
        argv = ["--type", "A1", "--lambda", str(2**62), "--tau", "1"]
        code, doc = self._error(argv + ["character", "--degree", "1"])
        self.assertEqual(code, 3)
        self.assertEqual(doc["error"], "E_TOO_MANY")

    def test_overrides_are_restored(self):
        from lsfan.config import settings

        before = settings.max_paths
        _run(A1 + ["--max-paths", "2", "lspaths", "--degree", "2"])
        self.assertEqual(settings.max_paths, before)


class CliVerifyCatalogCaseTests(unittest.TestCase):
    def test_grassmannian_verify(self):
        argv = ["--type", "A3", "--lambda", "0,1,0", "--tau", "longest", "--lattice-samples", "50"]
        code, out, _ = _run(argv + ["verify", "--dmax", "2"])
        self.assertEqual(code, 0)
        doc = json.loads(out)
        self.assertTrue(doc["ok"], doc["failures"])
        self.assertEqual(doc["degree_by_bonds"], 2)

    def test_output_identical_across_worker_counts(self):
        argv = ["--type", "A2", "--lambda", "1,0", "--lattice-samples", "20"]
        serial = _run(argv + ["--jobs", "1", "verify", "--dmax", "2"])
        parallel = _run(argv + ["--jobs", "2", "verify", "--dmax", "2"])
        self.assertEqual(serial, parallel)
        self.assertEqual(serial[0], 0)
