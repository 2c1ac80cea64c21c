"""Rewrite tests/golden/*. Run only after an intentional output change."""

import contextlib
import io
from pathlib import Path

from abar.cli import main

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"

CASES = {
    "curve_abar_5_2.csv": ["curve", "--a", "5", "--sigma", "2", "--y-max", "20", "--points", "11",
                           "--quantities", "pdf,cdf,survival"],
    "curve_plus_1_1.csv": ["curve", "--family", "abar_plus", "--a", "1", "--sigma", "1",
                           "--y-max", "9", "--points", "7"],
    "sample_5_2_seed501.csv": ["sample", "--a", "5", "--sigma", "2", "--n", "8", "--seed", "501"],
    "sample_vector_norm3.csv": ["sample", "--mean-vector", "3", "0", "4", "--sigma", "1",
                                  "--n", "5", "--seed", "501", "--stream-id", "2"],
}


def run(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    assert code == 0, argv
    return buf.getvalue()


if __name__ == "__main__":
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, argv in CASES.items():
        (GOLDEN / name).write_text(run(argv))
        print(GOLDEN / name)
