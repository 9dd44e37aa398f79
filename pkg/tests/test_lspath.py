import logging
import unittest
from fractions import Fraction

logging.disable(logging.CRITICAL)

HALF = Fraction(1, 2)


def _poset(kind, lam, tau="longest"):
    from lsfan.services.case_spec import CaseSpec, resolve

    return resolve(CaseSpec(type=kind, lambda_=lam, tau=tau)).build_poset()


def _vec(values):
    from lsfan.services.lspath import PathVector

    return PathVector.from_mapping(values)


class PathVectorTests(unittest.TestCase):
    def test_zero_entries_are_dropped(self):
        a = _vec({1: HALF, 0: 0})
        self.assertEqual(a.support, (1,))
        self.assertEqual(a.degree, HALF)
        self.assertTrue((a - a).is_zero())

    def test_arithmetic(self):
        a = _vec({0: 1})
        b = _vec({1: HALF, 0: HALF})
        self.assertEqual(a + b, _vec({1: HALF, 0: Fraction(3, 2)}))
        self.assertEqual(b.scale(2), _vec({0: 1, 1: 1}))
        self.assertFalse((a - b).is_nonnegative())


class LatticeTests(unittest.TestCase):
    def test_ls_member_on_a1_chain(self):
        poset = _poset("A1", "2", "1")
        chain = poset.chains[0]
        from lsfan.services.lspath import ls_member, ls_member_via_B

        self.assertTrue(ls_member(chain, {1: HALF, 0: HALF}))
        self.assertFalse(ls_member(chain, {1: HALF}))
        self.assertTrue(ls_member(chain, {}))
        self.assertTrue(ls_member(chain, {1: Fraction(-1, 2), 0: Fraction(3, 2)}))
        self.assertFalse(ls_member(chain, {1: Fraction(1, 3), 0: Fraction(2, 3)}))
        self.assertTrue(ls_member_via_B(chain, {1: HALF, 0: HALF}))
        self.assertFalse(ls_member_via_B(chain, {1: HALF}))

    def test_support_outside_the_chain(self):
        from lsfan.errors import SupportError
        from lsfan.services.lspath import ls_member

        poset = _poset("A3", "0,1,0")
        chain = poset.chains[0]
        outside = next(n.id for n in poset.nodes if n.id not in chain)
        with self.assertRaises(SupportError):
            ls_member(chain, {outside: 1})

    def test_b_matrix(self):
        from lsfan.services.bonded_poset import Chain
        from lsfan.services.lspath import b_matrix, check_b_matrix

        chain = _poset("A1", "2", "1").chains[0]
        self.assertEqual(b_matrix(chain), ((2, 0), (1, 1)))
        self.assertTrue(check_b_matrix(chain))

        single = Chain(nodes=(0,), bonds=())
        self.assertEqual(b_matrix(single), ((1,),))
        self.assertTrue(check_b_matrix(single))

        longer = Chain(nodes=(3, 2, 1, 0), bonds=(3, 2, 1))
        self.assertEqual(
            b_matrix(longer),
            ((3, 0, 0, 0), (2, 2, 0, 0), (1, 1, 1, 0), (1, 1, 1, 1)),
        )
        self.assertTrue(check_b_matrix(longer))


class LsPathTests(unittest.TestCase):
    def test_enumeration_on_a1(self):
        from lsfan.services.lspath import enumerate_ls_paths

        poset = _poset("A1", "2", "1")
        paths = enumerate_ls_paths(poset, 1)

        self.assertEqual(paths, [_vec({0: 1}), _vec({1: HALF, 0: HALF}), _vec({1: 1})])
        self.assertEqual(len(enumerate_ls_paths(poset, 2)), 5)
        self.assertEqual(enumerate_ls_paths(poset, 0), [_vec({})])

    def test_enumeration_counts_follow_dimensions(self):
        from lsfan.services.lspath import enumerate_ls_paths

        self.assertEqual(len(enumerate_ls_paths(_poset("A2", "1,0"), 1)), 3)
        self.assertEqual(len(enumerate_ls_paths(_poset("A2", "1,1"), 1)), 8)
        self.assertEqual(len(enumerate_ls_paths(_poset("A3", "0,1,0"), 1)), 6)
        self.assertEqual(len(enumerate_ls_paths(_poset("A3", "0,1,0"), 2)), 20)

    def test_enumeration_is_sorted_and_duplicate_free(self):
        from lsfan.services.lspath import default_linearization, enumerate_ls_paths, lex_key

        poset = _poset("B2", "1,0")
        paths = enumerate_ls_paths(poset, 2)
        lin = default_linearization(poset)
        keys = [lex_key(lin, a) for a in paths]
        self.assertEqual(keys, sorted(keys))
        self.assertEqual(len(set(paths)), len(paths))

    def test_path_cap(self):
        from lsfan.errors import TooManyError
        from lsfan.services.lspath import enumerate_ls_paths

        with self.assertRaises(TooManyError):
            enumerate_ls_paths(_poset("A1", "2", "1"), 2, cap=2)

    def test_is_ls_path(self):
        from lsfan.services.lspath import is_ls_path

        a1 = _poset("A1", "2", "1")
        self.assertTrue(is_ls_path(a1, _vec({1: HALF, 0: HALF})))
        self.assertFalse(is_ls_path(a1, _vec({0: HALF})))
        self.assertFalse(is_ls_path(a1, _vec({1: Fraction(3, 2), 0: Fraction(-1, 2)})))

        a3 = _poset("A3", "0,1,0")
        self.assertFalse(is_ls_path(a3, _vec({2: 1, 3: 1})))

    def test_weight(self):
        from lsfan.services.lspath import integral_weight, weight
        from lsfan.services.rootsys import Weight

        poset = _poset("A1", "2", "1")
        self.assertEqual(weight(poset, _vec({1: HALF, 0: HALF})), (Fraction(0),))
        self.assertEqual(weight(poset, _vec({1: 1})), (Fraction(-2),))
        self.assertEqual(integral_weight((Fraction(3),)), Weight.of(3))
        self.assertIsNone(integral_weight((HALF,)))

    def test_to_path_model(self):
        from lsfan.errors import NotLsPathError
        from lsfan.services.lspath import to_path_model
        from lsfan.services.rootsys import Weight

        poset = _poset("A1", "2", "1")
        self.assertEqual(
            to_path_model(poset, _vec({1: HALF, 0: HALF})),
            [(HALF, Weight.of(-2)), (HALF, Weight.of(2))],
        )
        with self.assertRaises(NotLsPathError):
            to_path_model(poset, _vec({0: HALF}))

    def test_parse_and_format(self):
        from lsfan.errors import NotLsPathError
        from lsfan.services.lspath import format_path, parse_path

        poset = _poset("A1", "2", "1")
        a = parse_path(poset, {"1": "3/2", "e": "1/2"})
        self.assertEqual(a, _vec({1: Fraction(3, 2), 0: HALF}))
        self.assertEqual(format_path(poset, a), "3/2*e[1] + 1/2*e[e]")
        with self.assertRaises(NotLsPathError):
            parse_path(poset, {"1": "x"})


class OrderTests(unittest.TestCase):
    def test_lex_compare_decides_at_the_top(self):
        from lsfan.services.lspath import Comparison, lex_compare

        lin = (0, 1)
        self.assertEqual(lex_compare(lin, _vec({0: 1}), _vec({1: 1})), Comparison.LT)
        self.assertEqual(lex_compare(lin, _vec({1: HALF, 0: HALF}), _vec({1: 1})), Comparison.LT)
        self.assertEqual(lex_compare(lin, _vec({1: 1}), _vec({1: 1})), Comparison.EQ)
        self.assertEqual(lex_compare(lin, _vec({1: 1}), _vec({0: 5})), Comparison.GT)

    def test_linear_extensions(self):
        from lsfan.services.lspath import linear_extensions

        self.assertEqual(linear_extensions(_poset("A1", "2", "1")), [(0, 1)])
        self.assertEqual(
            linear_extensions(_poset("A3", "0,1,0")),
            [(0, 1, 2, 3, 4, 5), (0, 1, 3, 2, 4, 5)],
        )

    def test_linear_extension_cap(self):
        from lsfan.errors import TooManyLinearExtensionsError
        from lsfan.services.lspath import linear_extensions

        with self.assertRaises(TooManyLinearExtensionsError):
            linear_extensions(_poset("A3", "0,1,0"), cap=1)

    def test_dominates_all(self):
        from lsfan.services.lspath import dominates_all

        a1 = _poset("A1", "2", "1")
        self.assertTrue(dominates_all(a1, _vec({0: 1}), _vec({1: 1})))
        self.assertFalse(dominates_all(a1, _vec({1: 1}), _vec({0: 1})))

        a3 = _poset("A3", "0,1,0")
        self.assertFalse(dominates_all(a3, _vec({2: 1}), _vec({3: 1})))
        self.assertFalse(dominates_all(a3, _vec({3: 1}), _vec({2: 1})))
        self.assertTrue(dominates_all(a3, _vec({2: 1}), _vec({4: 1})))


ADDITIVE_CASES = (
    ("A1", "2", "1"),
    ("A2", "1,1", "longest"),
    ("A3", "0,1,0", "longest"),
    ("G2", "1,0", "longest"),
)


class AdditivityTests(unittest.TestCase):
    def test_chain_paths_are_closed_under_addition(self):
        from lsfan.services.lspath import enumerate_ls_paths, is_ls_path, ls_member

        for kind, lam, tau in ADDITIVE_CASES:
            poset = _poset(kind, lam, tau)
            ones = enumerate_ls_paths(poset, 1)
            twos = enumerate_ls_paths(poset, 2)
            threes = set(enumerate_ls_paths(poset, 3))
            for chain in poset.chains:
                nodes = set(chain.nodes)
                on_one = [a for a in ones if set(a.support) <= nodes]
                on_two = [b for b in twos if set(b.support) <= nodes]
                with self.subTest(kind=kind, lam=lam, chain=chain.nodes):
                    for a in on_one:
                        for b in on_two:
                            total = a + b
                            self.assertTrue(ls_member(chain, total))
                            self.assertTrue(is_ls_path(poset, total))
                            self.assertIn(total, threes)

    def test_degree_and_weight_are_additive(self):
        from lsfan.services.lspath import degree, enumerate_ls_paths, weight

        for kind, lam, tau in ADDITIVE_CASES:
            poset = _poset(kind, lam, tau)
            paths = enumerate_ls_paths(poset, 1) + enumerate_ls_paths(poset, 2)
            with self.subTest(kind=kind, lam=lam):
                for a in paths:
                    for b in paths:
                        total = a + b
                        self.assertEqual(degree(total), degree(a) + degree(b))
                        self.assertEqual(
                            weight(poset, total),
                            tuple(x + y for x, y in zip(weight(poset, a), weight(poset, b))),
                        )

    def test_lex_compare_is_translation_invariant(self):
        import numpy as np

        from lsfan.services.lspath import enumerate_ls_paths, lex_compare, linear_extensions

        rng = np.random.default_rng(2024)
        for kind, lam, tau in ADDITIVE_CASES:
            poset = _poset(kind, lam, tau)
            paths = enumerate_ls_paths(poset, 1) + enumerate_ls_paths(poset, 2)
            for lin in linear_extensions(poset):
                with self.subTest(kind=kind, lam=lam, lin=lin):
                    for i, j, k in rng.integers(len(paths), size=(100, 3)):
                        a, b, c = paths[i], paths[j], paths[k]
                        self.assertEqual(lex_compare(lin, a, b), lex_compare(lin, a + c, b + c))
