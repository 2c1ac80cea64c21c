import json
import math
import sys
import pathlib

import numpy as np
import pytest

from abar import AbarParams, log_pdf, pdf
from abar.numeric import Tolerance, integrate_adaptive

DATA = pathlib.Path(__file__).parent / "data"

# (a, sigma) grid shared by the normalization and moment checks
A_GRID = (0.0, 0.1, 1.0, 5.0, 50.0)
SIGMA_GRID = (0.5, 1.0, 2.0, 10.0)
PARAM_GRID = [(a, s) for a in A_GRID for s in SIGMA_GRID]


@pytest.fixture(scope="session")
def seeds():
    return json.loads((DATA / "seeds.json").read_text())


def moment_quad(p: AbarParams, weight, span=40.0, rel=1e-12):
    """Integrate weight(y) * pdf(y) over [0, a + span*sigma] with sigma-wide cuts."""
    hi = p.a + span * p.sigma
    cuts = np.arange(p.sigma, hi, p.sigma)
    return integrate_adaptive(
        lambda y: weight(y) * pdf(p, y), 0.0, hi, Tolerance(rel=rel, abs=1e-300),
        breakpoints=cuts,
    )


def mgf_quad(p, t):
    """Laplace-transform oracle: integrate exp(t y + log f(y) - c) and scale back by e^c.

    The tilted density is centred near a + t sigma^2, so the range extends 40 sigma past it.
    """
    centre = max(p.a, p.a + t * p.sigma**2)
    hi = centre + 40 * p.sigma
    c = t * p.a + 0.5 * t * t * p.sigma**2
    q = integrate_adaptive(
        lambda y: np.exp(t * y + log_pdf(p, y) - c), 0.0, hi, Tolerance(rel=1e-12, abs=1e-300),
        breakpoints=np.arange(p.sigma, hi, p.sigma),
    )
    return q * math.exp(c)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(mod.RESULTS.items()):
            terminalreporter.write_line(line)
