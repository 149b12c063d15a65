"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest -s tests/test_acceptance.py` to see the lines as they
happen; without -s they appear in pytest's captured output on failure.
"""

import subprocess
import sys
import time
import xml.etree.ElementTree as ET
from contextlib import contextmanager

import numpy as np
import pytest

from ciede2000_reference import CIEDE2000_PAIRS
from equipalette.cli import main
from equipalette.color_space import LabColor, SrgbColor, round_trip_error
from equipalette.equilibrium import SolverConfig, cached_solve, coulomb_energy, energy_gradient, solve
from equipalette.evaluation import contrast_curve
from equipalette.metrics import ContrastMetric, delta_e_2000
from equipalette.render import (
    ScatterProjection,
    render_contrast_chart,
    render_lab_scatter,
    render_pie,
    render_swatches,
)
from equipalette.schemes import MID_GRAY, PaletteSpec, SchemeKind, generate_palette, max_inscribed_radius

FULL_RANGE = range(2, 101)


@contextmanager
def criterion(label: str):
    try:
        yield
    except BaseException:
        print(f"FAIL {label}")
        raise
    print(f"PASS {label}")


@pytest.fixture(scope="session")
def equilibrium_cie76_timed():
    cached_solve.cache_clear()  # time the curve cold
    start = time.perf_counter()
    report = contrast_curve(SchemeKind.EQUILIBRIUM, ContrastMetric.CIE76, FULL_RANGE)
    return report, time.perf_counter() - start


@pytest.fixture(scope="session")
def equilibrium_ciede2000(equilibrium_cie76_timed):
    return contrast_curve(SchemeKind.EQUILIBRIUM, ContrastMetric.CIEDE2000, FULL_RANGE)


@pytest.fixture(scope="session")
def harmonic_cie76():
    return contrast_curve(SchemeKind.HARMONIC, ContrastMetric.CIE76, FULL_RANGE)


@pytest.fixture(scope="session")
def harmonic_ciede2000():
    return contrast_curve(SchemeKind.HARMONIC, ContrastMetric.CIEDE2000, FULL_RANGE)


def test_criterion_1_platonic_reproduction(capsys) -> None:
    with criterion("criterion 1: known optimal separations reproduced in under 30 s"):
        start = time.perf_counter()
        exit_code = main(["verify-platonic"])
        elapsed = time.perf_counter() - start
        assert exit_code == 0, "verify-platonic reported a miss at its default tolerance"
        assert elapsed < 30.0, f"verify-platonic took {elapsed:.1f} s"
        for n, expected, tol in (
            (4, 1.63299, 1e-4),
            (6, 1.41421, 1e-4),
            (12, 1.05146, 1e-4),
            (8, 1.1712, 1e-3),
            (20, 0.782961, 1e-3),
        ):
            achieved = solve(n).min_distance
            assert abs(achieved - expected) <= tol, f"n={n}: {achieved} vs {expected} (tol {tol})"


def test_criterion_2_asterisk_claims() -> None:
    with criterion("criterion 2: n=8 is not a cube, n=20 is not a dodecahedron"):
        # a cube has 12 equal nearest-neighbor chords of 1.1547; the
        # dodecahedron's edge is 0.713644
        assert solve(8).min_distance > 1.16
        assert solve(20).min_distance > 0.75


def test_criterion_3_equilibrium_stays_above_jnd(equilibrium_cie76_timed, equilibrium_ciede2000) -> None:
    with criterion("criterion 3: equilibrium n=100 above both JNDs, curve under 2 min"):
        report76, elapsed = equilibrium_cie76_timed
        values76 = dict(report76.series)
        assert values76[100] > 5.0, f"min CIE76 at n=100 is {values76[100]}"
        values00 = dict(equilibrium_ciede2000.series)
        assert values00[100] > 1.0, f"min CIEDE2000 at n=100 is {values00[100]}"
        assert elapsed < 120.0, f"full n=2..100 curve took {elapsed:.1f} s"


def test_criterion_4_harmonic_jnd_crossing(harmonic_cie76) -> None:
    with criterion("criterion 4: harmonic CIE76 curve first crosses the JND in n=[12, 30]"):
        crossing = harmonic_cie76.jnd_crossing
        assert crossing is not None, "harmonic curve never crossed the JND"
        assert 12 <= crossing <= 30, f"crossing at n={crossing}"


def test_criterion_5_equilibrium_dominates_harmonic(
    equilibrium_cie76_timed, equilibrium_ciede2000, harmonic_cie76, harmonic_ciede2000
) -> None:
    with criterion("criterion 5: equilibrium >= harmonic for every n in 2..100, both metrics"):
        violations = []
        for label, eq_report, ha_report in (
            ("cie76", equilibrium_cie76_timed[0], harmonic_cie76),
            ("ciede2000", equilibrium_ciede2000, harmonic_ciede2000),
        ):
            eq_values = dict(eq_report.series)
            ha_values = dict(ha_report.series)
            for n in FULL_RANGE:
                if eq_values[n] < ha_values[n]:
                    violations.append(f"{label} n={n}: equilibrium {eq_values[n]:.3f} < harmonic {ha_values[n]:.3f}")
        assert not violations, (
            "dominance fails at small n: a saturated full-gamut hue wheel out-distances any "
            "sphere inscribed around mid-gray there; violations: " + "; ".join(violations)
        )


def test_criterion_6_ciede2000_verification_dataset() -> None:
    with criterion("criterion 6: all published CIEDE2000 verification pairs within 1e-4"):
        for l1, a1, b1, l2, a2, b2, expected in CIEDE2000_PAIRS:
            got = delta_e_2000(LabColor(l1, a1, b1), LabColor(l2, a2, b2))
            assert abs(got - expected) <= 1e-4, (l1, a1, b1, l2, a2, b2, got, expected)


def _fd_tangential_gradient(pts: np.ndarray, h: float = 1e-6) -> np.ndarray:
    fd = np.zeros_like(pts)
    for i in range(pts.shape[0]):
        for k in range(3):
            plus = pts.copy()
            plus[i, k] += h
            plus[i] /= np.linalg.norm(plus[i])
            minus = pts.copy()
            minus[i, k] -= h
            minus[i] /= np.linalg.norm(minus[i])
            fd[i, k] = (coulomb_energy(plus) - coulomb_energy(minus)) / (2.0 * h)
    return fd


def test_criterion_7_property_suites(tmp_path, equilibrium_cie76_timed) -> None:
    with criterion("criterion 7: property suites"):
        # color-space round trip: 1000 random displayable colors, < 1e-9
        rng = np.random.default_rng(0)
        for _ in range(1000):
            c = SrgbColor(*(float(v) for v in rng.random(3)))
            assert round_trip_error(c) < 1e-9

        # tangential gradient vs central finite differences: 20 random
        # configurations, < 1e-5
        rng = np.random.default_rng(101)
        for _ in range(20):
            n = int(rng.integers(4, 14))
            pts = rng.standard_normal((n, 3))
            pts /= np.linalg.norm(pts, axis=1, keepdims=True)
            assert np.max(np.abs(energy_gradient(pts) - _fd_tangential_gradient(pts))) < 1e-5

        # energy monotone over accepted steps, within each restart's descent
        steps: list[tuple[int, float]] = []
        solve(11, SolverConfig(seed=6, restarts=2), on_step=lambda it, e: steps.append((it, e)))
        assert steps
        runs: list[list[float]] = []
        last_it = 0
        for it, energy in steps:
            if it <= last_it:
                runs.append([])
            elif not runs:
                runs.append([])
            runs[-1].append(energy)
            last_it = it
        assert len(runs) == 2
        for run in runs:
            assert all(b <= a for a, b in zip(run, run[1:]))

        # rotation invariance of energy and min distance, < 1e-9
        config = solve(14, SolverConfig(seed=1))
        rot_rng = np.random.default_rng(2)
        for _ in range(5):
            q, _ = np.linalg.qr(rot_rng.standard_normal((3, 3)))
            rotated = config.points @ q.T
            assert abs(coulomb_energy(rotated) - config.energy) <= 1e-9 * config.energy
            dmin = min(
                float(np.linalg.norm(rotated[i] - rotated[j]))
                for i in range(14)
                for j in range(i + 1, 14)
            )
            assert abs(dmin - config.min_distance) < 1e-9

        # scaling linearity of the equilibrium CIE76 curve, < 1e-6
        report76, _ = equilibrium_cie76_timed
        r = max_inscribed_radius(MID_GRAY)
        for n, value in report76.series:
            unit = cached_solve(n, SolverConfig(seed=n))
            assert abs(value - r * unit.min_distance) < 1e-6, f"n={n}"

        # determinism: byte-identical CLI reruns
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        for path in (first, second):
            proc = subprocess.run(
                [sys.executable, "-m", "equipalette", "generate", "--n", "20", "--seed", "7", "--out", str(path)],
                capture_output=True,
            )
            assert proc.returncode == 0, proc.stderr.decode()
        assert first.read_bytes() == second.read_bytes()

        # every emitted SVG parses as well-formed XML
        palette = generate_palette(PaletteSpec(n=12, seed=4))
        chart_report = contrast_curve(SchemeKind.HARMONIC, ContrastMetric.CIE76, range(2, 12))
        for doc in (
            render_swatches(palette),
            render_pie(palette),
            render_lab_scatter(palette),
            render_lab_scatter(palette, ScatterProjection.THREE_QUARTER),
            render_contrast_chart([chart_report]),
        ):
            ET.fromstring(doc.body)
