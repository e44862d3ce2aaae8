import unittest

from _test_support import constant_image, random_image, scene_image
from wordsurf.analysis import compare_methods
from wordsurf.schemas import ReductionConfig

FULL = ReductionConfig()
EXACT = ReductionConfig(method="exact")


class CompareMethodsTests(unittest.TestCase):
    def test_zero_image_full_against_exact(self):
        report = compare_methods([("zero", constant_image(0, 160, 100))], [FULL, EXACT], threshold=50000, octaves=4)
        self.assertEqual(report.cell("zero", FULL).count, 0)
        self.assertEqual(report.cell("zero", EXACT).count, 0)
        self.assertEqual(
            report.point_counts_csv(),
            "image,run,baseline,baseline_count,count,diff,same_points\nzero,exact,full,0,0,0,yes\n",
        )

    def test_exact_matches_full_on_every_image(self):
        images = [(f"scene{seed}", scene_image(seed=seed, width=200, height=160)) for seed in range(3)]
        report = compare_methods(images, [FULL, EXACT], threshold=1000, octaves=3)
        _, rows = report.point_counts_rows()
        self.assertEqual([row[5] for row in rows], [0, 0, 0])
        self.assertEqual([row[6] for row in rows], ["yes", "yes", "yes"])

    def test_even_image_table_lists_word_lengths(self):
        configs = [FULL] + [ReductionConfig(method="even", shift=shift) for shift in range(1, 5)]
        report = compare_methods([("img", random_image(seed=3, width=160, height=100))], configs, threshold=50000, octaves=2)
        header, rows = report.run_summary_rows()
        self.assertEqual(header, ["run", "method", "p", "L_ii", "img"])
        self.assertEqual([row[3] for row in rows], ["20", "19", "18", "17"])
        self.assertEqual([row[2] for row in rows], [1, 2, 3, 4])

    def test_failures_are_recorded_per_cell(self):
        images = [("small", constant_image(0, 100, 100)), ("large", constant_image(0, 160, 100))]
        with self.assertLogs("wordsurf.analysis.compare", level="WARNING"):
            report = compare_methods(images, [FULL, EXACT], threshold=50000, octaves=2)
        self.assertEqual([cell.image_id for cell in report.failed], ["small"])
        self.assertIn("ScheduleError", report.cell("small", EXACT).error)
        self.assertEqual(report.cell("large", EXACT).count, 0)
        _, rows = report.point_counts_rows()
        self.assertEqual(rows[0][4:], ["error", "error", "error"])
        self.assertIn("error", report.summary_text())

    def test_csv_is_byte_deterministic(self):
        images = [("img", random_image(seed=8, width=160, height=100))]
        configs = [FULL, ReductionConfig(method="modified-exact")]
        first = compare_methods(images, configs, threshold=50000, octaves=2)
        second = compare_methods(images, configs, threshold=50000, octaves=2, max_workers=1)
        self.assertEqual(first.point_counts_csv(), second.point_counts_csv())
        self.assertEqual(first.run_summary_csv(), second.run_summary_csv())

    def test_inputs_are_validated(self):
        img = constant_image(0, 20, 20)
        with self.assertRaises(ValueError):
            compare_methods([], [FULL, EXACT])
        with self.assertRaises(ValueError):
            compare_methods([("a", img), ("a", img)], [FULL, EXACT])
        with self.assertRaises(ValueError):
            compare_methods([("a", img)], [FULL, ReductionConfig()])


if __name__ == "__main__":
    unittest.main()
