import unittest

import numpy as np

from _test_support import brute_box_sum, constant_image, random_image
from wordsurf.errors import IntegralConfigError, IntegralValidationError, RectBoundsError
from wordsurf.image import Rect
from wordsurf.integral import (
    box_sum,
    box_sum_checked,
    box_sum_grid,
    build_integral,
    integral_to_csv,
)
from wordsurf.wordlen import bits_exact


def _random_rects(rng: np.random.Generator, width: int, height: int, count: int) -> list[Rect]:
    rects = []
    for _ in range(count):
        x0, x1 = sorted(int(v) for v in rng.integers(0, width, size=2))
        y0, y1 = sorted(int(v) for v in rng.integers(0, height, size=2))
        rects.append(Rect(x0, y0, x1, y1))
    return rects


class BuildIntegralTests(unittest.TestCase):
    def test_small_hand_sums(self):
        ii = build_integral(constant_image(1, 2, 2), 32)
        self.assertEqual(ii.values.tolist(), [[1, 2], [2, 4]])

    def test_entries_wrap_modulo_word_length(self):
        ii = build_integral(constant_image(255, 2, 2), 8)
        self.assertEqual(ii.entry(1, 1), 1020 % 256)

    def test_wide_word_matches_unbounded_integral(self):
        img = random_image(seed=7, width=32, height=32)
        ii = build_integral(img, 32)
        np.testing.assert_array_equal(ii.values.astype(np.int64), img.exact_integral)

    def test_values_use_the_smallest_container(self):
        img = random_image(seed=2, width=16, height=16)
        self.assertEqual(build_integral(img, 8).values.dtype, np.uint8)
        self.assertEqual(build_integral(img, 22).values.dtype, np.uint32)
        self.assertEqual(build_integral(img, 64).values.dtype, np.uint64)

    def test_every_entry_fits_the_word_length(self):
        ii = build_integral(random_image(seed=4, width=40, height=30), 13)
        self.assertLess(int(ii.values.max()), 1 << 13)

    def test_word_length_must_hold_a_pixel(self):
        with self.assertRaises(IntegralConfigError):
            build_integral(constant_image(1, 2, 2), 7)
        with self.assertRaises(IntegralConfigError):
            build_integral(constant_image(1, 2, 2), 65)

    def test_border_entries_read_as_zero(self):
        ii = build_integral(constant_image(3, 4, 4), 16)
        self.assertEqual(ii.entry(-1, 2), 0)
        self.assertEqual(ii.entry(2, -1), 0)


class BoxSumTests(unittest.TestCase):
    def test_zero_image(self):
        ii = build_integral(constant_image(0, 10, 10), 8)
        self.assertEqual(box_sum(ii, Rect(2, 3, 7, 9)), 0)

    def test_full_image_rect(self):
        ii = build_integral(constant_image(1, 2, 2), 32)
        self.assertEqual(box_sum(ii, Rect(0, 0, 1, 1)), 4)

    def test_box_at_the_exact_bound_wraps_one_bit_short(self):
        img = constant_image(255, 129, 65)
        rect = Rect(0, 0, 128, 64)
        self.assertEqual(box_sum(build_integral(img, 22), rect), 2_138_175)
        self.assertEqual(box_sum(build_integral(img, 21), rect), 2_138_175 - (1 << 21))
        self.assertEqual(box_sum(build_integral(img, 21), rect), 41_023)

    def test_out_of_bounds(self):
        ii = build_integral(constant_image(1, 4, 4), 8)
        with self.assertRaises(RectBoundsError):
            box_sum(ii, Rect(0, 0, 4, 3))

    def test_random_rects_within_capacity_are_exact(self):
        rng = np.random.default_rng(2024)
        for seed in range(10):
            img = random_image(seed=seed)
            tables = {}
            for rect in _random_rects(rng, img.width, img.height, 100):
                bits = bits_exact(rect.width, rect.height, 8)
                if bits not in tables:
                    tables[bits] = build_integral(img, bits)
                with self.subTest(seed=seed, rect=rect):
                    self.assertEqual(box_sum(tables[bits], rect), brute_box_sum(img, rect.x0, rect.y0, rect.x1, rect.y1))

    def test_narrow_words_give_the_residue(self):
        img = random_image(seed=9, width=64, height=64)
        ii = build_integral(img, 12)
        rng = np.random.default_rng(5)
        for rect in _random_rects(rng, 64, 64, 200):
            with self.subTest(rect=rect):
                expected = brute_box_sum(img, rect.x0, rect.y0, rect.x1, rect.y1) % (1 << 12)
                self.assertEqual(box_sum(ii, rect), expected)

    def test_grid_matches_scalar_extraction(self):
        img = random_image(seed=12, width=50, height=40)
        ii = build_integral(img, 20)
        xs = np.array([0, 5, 17, 30])
        ys = np.array([0, 9, 21])
        grid = box_sum_grid(ii, xs, ys, xs + 9, ys + 13)
        self.assertEqual(grid.shape, (3, 4))
        for row, y in enumerate(ys):
            for col, x in enumerate(xs):
                rect = Rect(int(x), int(y), int(x) + 9, int(y) + 13)
                self.assertEqual(int(grid[row, col]), box_sum(ii, rect))


class BoxSumCheckedTests(unittest.TestCase):
    def test_overflow_flag(self):
        img = constant_image(255, 129, 65)
        rect = Rect(0, 0, 128, 64)
        self.assertEqual(tuple(box_sum_checked(img, build_integral(img, 22), rect)), (2_138_175, False))
        self.assertEqual(tuple(box_sum_checked(img, build_integral(img, 21), rect)), (41_023, True))

    def test_every_rect_of_a_small_image_agrees_with_the_shadow(self):
        img = random_image(seed=31, width=8, height=8)
        rects = [
            Rect(x0, y0, x1, y1)
            for y0 in range(8)
            for y1 in range(y0, 8)
            for x0 in range(8)
            for x1 in range(x0, 8)
        ]
        self.assertEqual(len(rects), 36 * 36)
        for bits in range(8, 17):
            ii = build_integral(img, bits)
            with self.subTest(bits=bits):
                for rect in rects:
                    true_sum = brute_box_sum(img, rect.x0, rect.y0, rect.x1, rect.y1)
                    value, overflowed = box_sum_checked(img, ii, rect)
                    self.assertEqual(value, true_sum % (1 << bits), rect)
                    self.assertEqual(overflowed, true_sum > (1 << bits) - 1, rect)
                    if bits >= bits_exact(rect.width, rect.height, 8):
                        self.assertFalse(overflowed, rect)
                        self.assertEqual(value, true_sum, rect)

    def test_zero_image_never_overflows(self):
        img = constant_image(0, 20, 20)
        for bits in (8, 16, 40):
            self.assertEqual(tuple(box_sum_checked(img, build_integral(img, bits), Rect(1, 1, 18, 18))), (0, False))

    def test_dimension_mismatch(self):
        img = constant_image(1, 4, 4)
        other = build_integral(constant_image(1, 5, 4), 16)
        with self.assertRaises(IntegralValidationError):
            box_sum_checked(img, other, Rect(0, 0, 1, 1))


class IntegralCsvTests(unittest.TestCase):
    def test_rows_of_residues(self):
        ii = build_integral(constant_image(1, 2, 2), 32)
        self.assertEqual(integral_to_csv(ii), "1,2\n2,4\n")


if __name__ == "__main__":
    unittest.main()
