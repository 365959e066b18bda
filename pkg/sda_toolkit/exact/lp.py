"""
Writing models in the CPLEX LP text format through pyomo's LP writer.
"""

import tempfile
from pathlib import Path

from sda_toolkit.exact.model import IpModel

LP_OPTIONS = {"symbolic_solver_labels": True}


def write_lp(m: IpModel, path: Path | str) -> Path:
    """Writes `m` to `path` with readable variable and constraint labels"""
    path = Path(path)
    m.model.write(str(path), format="lp", io_options=LP_OPTIONS)
    return path


def export_lp(m: IpModel) -> str:
    with tempfile.TemporaryDirectory() as tmpdir:
        return write_lp(m, Path(tmpdir) / f"{m.name}.lp").read_text()
