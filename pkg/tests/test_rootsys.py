import unittest


class CartanKindTests(unittest.TestCase):
    def test_parse_accepts_lowercase_and_spaces(self):
        from lsfan.services.rootsys import CartanKind

        self.assertEqual(CartanKind.parse(" a3 "), CartanKind("A", 3))
        self.assertEqual(str(CartanKind.parse("G2")), "G2")

    def test_invalid_family_and_rank_raise_bad_kind(self):
        from lsfan.errors import BadKindError
        from lsfan.services.rootsys import CartanKind

        for text in ("X2", "D3", "E5", "F3", "G3", "B1", "A0", "A"):
            with self.subTest(text=text):
                with self.assertRaises(BadKindError):
                    CartanKind.parse(text)


class RootSystemTests(unittest.TestCase):
    def test_positive_root_counts_match_classical_values(self):
        from lsfan.services.rootsys import CartanKind, build_root_system

        expected = {
            "A1": 1,
            "A2": 3,
            "A3": 6,
            "B2": 4,
            "C3": 9,
            "D4": 12,
            "G2": 6,
            "F4": 24,
            "E6": 36,
            "E7": 63,
        }
        for text, count in expected.items():
            with self.subTest(kind=text):
                rs = build_root_system(CartanKind.parse(text))
                self.assertEqual(len(rs.positive_roots), count)

    def test_cartan_matrices_follow_bourbaki(self):
        from lsfan.services.rootsys import CartanKind, cartan_matrix

        self.assertEqual(cartan_matrix(CartanKind("A", 1)).tolist(), [[2]])
        self.assertEqual(cartan_matrix(CartanKind("B", 2)).tolist(), [[2, -1], [-2, 2]])
        self.assertEqual(cartan_matrix(CartanKind("C", 2)).tolist(), [[2, -2], [-1, 2]])
        self.assertEqual(cartan_matrix(CartanKind("G", 2)).tolist(), [[2, -3], [-1, 2]])

    def test_a2_roots_and_simple_roots(self):
        from lsfan.services.rootsys import CartanKind, Weight, build_root_system

        rs = build_root_system(CartanKind("A", 2))
        self.assertEqual(
            [r.root_coords for r in rs.positive_roots], [(1, 0), (0, 1), (1, 1)]
        )
        self.assertEqual(rs.simple_roots[0].weight, Weight.of(2, -1))
        self.assertEqual(rs.simple_roots[1].weight, Weight.of(-1, 2))

    def test_pairing_examples(self):
        from lsfan.services.rootsys import CartanKind, Weight, build_root_system, pairing

        a1 = build_root_system(CartanKind("A", 1))
        self.assertEqual(pairing(Weight.of(1), a1.positive_roots[0]), 1)

        a2 = build_root_system(CartanKind("A", 2))
        highest = a2.find_root((1, 1))
        self.assertEqual(pairing(Weight.of(1, 0), highest), 1)
        mu = Weight.of(1, 0) - a2.simple_roots[0].weight
        self.assertEqual(pairing(mu, a2.simple_roots[1]), 1)

    def test_reflect_examples(self):
        from lsfan.services.rootsys import CartanKind, Weight, build_root_system, reflect

        a1 = build_root_system(CartanKind("A", 1))
        self.assertEqual(reflect(Weight.of(1), a1.positive_roots[0]), Weight.of(-1))

        a2 = build_root_system(CartanKind("A", 2))
        self.assertEqual(reflect(Weight.of(1, 0), a2.simple_roots[0]), Weight.of(-1, 1))
        self.assertEqual(reflect(Weight.of(0, 1), a2.simple_roots[0]), Weight.of(0, 1))

    def test_reflection_is_involutive_and_negates_pairing(self):
        from lsfan.services.rootsys import CartanKind, Weight, build_root_system, pairing, reflect

        for text in ("A3", "B2", "C3", "G2"):
            rs = build_root_system(CartanKind.parse(text))
            mu = Weight(tuple(range(1, rs.rank + 1)))
            for beta in rs.positive_roots:
                with self.subTest(kind=text, beta=beta.root_coords):
                    self.assertEqual(reflect(reflect(mu, beta), beta), mu)
                    self.assertEqual(pairing(reflect(mu, beta), beta), -pairing(mu, beta))

    def test_simple_reflections_permute_roots_up_to_sign(self):
        from lsfan.services.rootsys import CartanKind, build_root_system

        for text in ("B3", "F4", "G2"):
            rs = build_root_system(CartanKind.parse(text))
            stored = {r.root_coords for r in rs.positive_roots}
            for beta in rs.positive_roots:
                for i in range(1, rs.rank + 1):
                    image = rs.simple_reflect_root(beta.root_coords, i)
                    negated = tuple(-c for c in image)
                    self.assertTrue(image in stored or negated in stored)

    def test_check_index_rejects_out_of_range(self):
        from lsfan.errors import BadIndexError
        from lsfan.services.rootsys import CartanKind, build_root_system

        rs = build_root_system(CartanKind("A", 2))
        with self.assertRaises(BadIndexError):
            rs.check_index(3)
        with self.assertRaises(BadIndexError):
            rs.fundamental_weight(0)


class WeightTests(unittest.TestCase):
    def test_arithmetic_and_predicates(self):
        from lsfan.services.rootsys import Weight

        mu = Weight.of(1, 0, 2)
        self.assertEqual(mu + Weight.of(0, 1, -2), Weight.of(1, 1, 0))
        self.assertEqual(-mu, Weight.of(-1, 0, -2))
        self.assertEqual(mu.scale(3), Weight.of(3, 0, 6))
        self.assertTrue(mu.is_dominant())
        self.assertFalse(Weight.of(1, -1).is_dominant())
        self.assertTrue(Weight.zero(2).is_zero())

    def test_overflow_is_an_error(self):
        from lsfan.errors import ArithmeticOverflowError
        from lsfan.services.rootsys import Weight

        with self.assertRaises(ArithmeticOverflowError):
            Weight.of(2**62).scale(4)
