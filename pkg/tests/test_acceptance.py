"""The twelve acceptance checks, one test each, printing one pass/fail line
per criterion (visible with pytest -s or in captured output on failure)."""
from bfspec import validation

_CHECKS = dict(validation.ALL_CHECKS)


def _run(num):
    result = validation.run_all(only={num})[0]
    status = "PASS" if result.passed else "FAIL"
    print(f"{status}  {result.name}: {result.detail}")
    assert result.passed, f"{result.name}: {result.detail}"


def test_criterion_01_whitham_benjamin_values():
    _run("1")


def test_criterion_02_product_identity():
    _run("2")


def test_criterion_03_flat_operator_oracle():
    _run("3")


def test_criterion_04_hamiltonian_pairing():
    _run("4")


def test_criterion_05_unstable_regime():
    _run("5")


def test_criterion_06_stable_regime():
    _run("6")


def test_criterion_07_orientation():
    _run("7")


def test_criterion_08_convergence_order():
    _run("8")


def test_criterion_09_conformal_fixed_point():
    _run("9")


def test_criterion_10_riesz_projector():
    _run("10")


def test_criterion_11_sylvester_algebra():
    _run("11")


def test_criterion_12_block_diagonalization():
    _run("12")
