import importlib.util
import subprocess
import sys
from pathlib import Path

import pytest

FIGPLOTS = Path(__file__).resolve().parent.parent
if str(FIGPLOTS) not in sys.path:
    sys.path.insert(0, str(FIGPLOTS))


def load_script(name):
    """Import render_fig<N>.py as a module."""
    spec = importlib.util.spec_from_file_location(name, FIGPLOTS / f"{name}.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def run_script(name, argv):
    """Run a figure script as a subprocess, the way a user would."""
    return subprocess.run([sys.executable, str(FIGPLOTS / f"{name}.py"),
                           *map(str, argv)], capture_output=True, text=True)


@pytest.fixture(scope="session")
def artifacts(tmp_path_factory):
    """Small real CLI artifacts used as fixtures by every figure test."""
    from topowalk.cli import main

    root = tmp_path_factory.mktemp("artifacts")

    d = root / "evolve"
    assert main(["evolve", "--code", "0321", "--steps", "16",
                 "--outdir", str(d)]) == 0
    d = root / "bands_free"
    assert main(["bands", "--theta-plus", "3pi/7", "--theta-minus", "2pi/9",
                 "--phi", "0", "--size", "7", "--outdir", str(d)]) == 0
    d = root / "bands_int"
    assert main(["bands", "--theta-plus", "3pi/7", "--theta-minus", "2pi/9",
                 "--phi", "pi/3", "--size", "7", "--outdir", str(d)]) == 0
    d = root / "chargemap"
    assert main(["chargemap", "--grid", "7", "--kpoints", "256",
                 "--threads", "1", "--outdir", str(d)]) == 0
    d = root / "lambdamap0"
    assert main(["lambdamap", "--energy", "0", "--phi", "0", "--grid", "17",
                 "--threads", "1", "--outdir", str(d)]) == 0
    d = root / "lambdamap1"
    assert main(["lambdamap", "--energy", "0", "--phi", "pi/3", "--grid", "17",
                 "--threads", "1", "--outdir", str(d)]) == 0
    d = root / "locmap"
    assert main(["locmap", "--theta-left=-pi/16", "--bell", "0", "--steps", "7",
                 "--grid", "4", "--threads", "1", "--outdir", str(d)]) == 0
    d = root / "fit"
    assert main(["fit", "--input", str(root / "evolve" / "entropy_series.csv"),
                 "--model", "log", "--tmin", "2", "--outdir", str(d)]) == 0
    return root
