"""Print one PASS/FAIL line per acceptance criterion without pytest."""

import pathlib
import runpy
import sys

tests = pathlib.Path(__file__).resolve().parent.parent / "tests"
sys.path.insert(0, str(tests))
runpy.run_path(str(tests / "test_acceptance.py"), run_name="__main__")
