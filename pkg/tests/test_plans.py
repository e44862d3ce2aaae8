import tempfile
import unittest
from pathlib import Path

import yaml

from _test_support import PLAN_DIR
from wordsurf.analysis import PlanLoader, PlanValidator
from wordsurf.errors import PlanValidationError


class PlanTests(unittest.TestCase):
    def test_validator_rejects_a_lone_run(self):
        with self.assertRaises(PlanValidationError):
            PlanValidator().validate({"key": "bad", "runs": [{"method": "full"}]})

    def test_validator_rejects_repeated_runs(self):
        payload = {"key": "bad", "runs": [{"method": "full"}, {"method": "even", "shift": 2}, {"method": "even", "shift": 2}]}
        with self.assertRaises(PlanValidationError) as ctx:
            PlanValidator().validate(payload)
        self.assertIn("even-p2", str(ctx.exception))

    def test_validator_rejects_invalid_method_shift(self):
        with self.assertRaises(PlanValidationError):
            PlanValidator().validate({"key": "bad", "runs": [{"method": "full"}, {"method": "even"}]})

    def test_loader_injects_plan_key_when_missing(self):
        with tempfile.TemporaryDirectory() as tmp_dir:
            plan_dir = Path(tmp_dir)
            payload = {"runs": [{"method": "full"}, {"method": "exact"}], "threshold": 1000}
            (plan_dir / "custom.yaml").write_text(yaml.safe_dump(payload), encoding="utf-8")
            loaded = PlanLoader(plan_dir).load("custom")

        self.assertEqual(loaded.key, "custom")
        self.assertEqual(loaded.threshold, 1000)
        self.assertIsNone(loaded.octaves)

    def test_loader_missing_file_raises(self):
        with tempfile.TemporaryDirectory() as tmp_dir:
            loader = PlanLoader(tmp_dir)
            with self.assertRaises(FileNotFoundError):
                loader.load("missing")

    def test_bundled_plans_load(self):
        loader = PlanLoader(PLAN_DIR)
        self.assertEqual(loader.available(), ["approximate", "bits20_accuracy", "even_shifts", "exact_equivalence"])
        for key in loader.available():
            with self.subTest(key=key):
                self.assertEqual(loader.load(key).key, key)
        even = loader.load("even_shifts")
        self.assertEqual([run.label for run in even.runs], ["full", "even-p1", "even-p2", "even-p3", "even-p4"])
        approximate = loader.load("approximate")
        self.assertIn("approximate-p2-raw", [run.label for run in approximate.runs])


if __name__ == "__main__":
    unittest.main()
