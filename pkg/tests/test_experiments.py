import subprocess
import sys
from pathlib import Path

from coxrings.experiments import Ext1TableConfig, ToricDimsConfig, ext1_table, toric_piece_dims

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def test_ext1_table_small():
    run = ext1_table(Ext1TableConfig(max_grading_order=4, max_unit_order=4))
    assert run.ok and len(run.rows) == 5 * 7
    assert run.config["max_unit_order"] == 4


def test_toric_dims_small():
    run = toric_piece_dims(ToricDimsConfig(surfaces=("P2", "P1xP1"), max_entry=3))
    assert run.ok and len(run.rows) == 4 + 16


def test_scripts_run():
    for script, args in [("ext1_table.py", ["--max-grading-order", "3"]), ("toric_piece_dims.py", ["--max-entry", "2"])]:
        proc = subprocess.run([sys.executable, str(SCRIPTS / script), *args], capture_output=True, text=True, check=False)
        assert proc.returncode == 0, proc.stderr
        assert proc.stdout.splitlines()[0].startswith(("grading", "surface"))
