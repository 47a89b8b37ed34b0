import numpy as np
import pytest

from quartic_pms.effective_frequency import OscillatorParams
from quartic_pms.errors import DomainError, ValidityError
from quartic_pms.oracle import (BasisSpec, build_hamiltonian, converged_partition, exact_partition,
                                exact_spectrum, exact_temperature_energies, load_spectrum, minimal_beta,
                                parity_blocks, save_spectrum, tail_bound)
from quartic_pms.pms import classical_partition, log_2sinh

UNIT = OscillatorParams(1.0, 1.0)


def test_basis_validation():
    with pytest.raises(DomainError):
        BasisSpec(size=9)
    with pytest.raises(DomainError):
        BasisSpec(basis_frequency=-1.0)


def test_hamiltonian_structure():
    h = build_hamiltonian(UNIT, 40, 1.7)
    assert np.array_equal(h, h.T)
    i, j = np.nonzero(np.abs(h) > 0)
    assert np.max(np.abs(i - j)) == 4
    assert np.all((i - j) % 2 == 0)


def test_x4_ground_element():
    # <0|x^4|0> = 3 / (4 Omega_b^2): the g-linear part of H[0, 0].
    om = 1.3
    p0, p1 = OscillatorParams(om, 0.0), OscillatorParams(om, 1.0)
    diff = build_hamiltonian(p1, 12, om)[0, 0] - build_hamiltonian(p0, 12, om)[0, 0]
    moment = np.trapezoid if hasattr(np, "trapezoid") else np.trapz
    x = np.linspace(-12, 12, 20001)
    psi2 = np.sqrt(om / np.pi) * np.exp(-om * x * x)
    assert diff == pytest.approx(3 / (4 * om * om), rel=1e-14)
    assert diff == pytest.approx(moment(x**4 * psi2, x), rel=1e-10)


def test_harmonic_basis_is_diagonal():
    h = build_hamiltonian(OscillatorParams(1.0, 0.0), 30, 1.0)
    assert np.allclose(h, np.diag(np.arange(30) + 0.5), atol=1e-14)


def test_harmonic_spectrum_and_partition():
    spec = exact_spectrum(OscillatorParams(1.0, 0.0), BasisSpec(200, 1.0))
    k = np.arange(spec.converged_count)
    assert np.max(np.abs(spec.converged - (k + 0.5))) < 1e-12
    for beta in (0.5, 1.0, 4.0):
        assert exact_partition(beta, spec).log_z == pytest.approx(-log_2sinh(0.5 * beta), abs=1e-12)


def test_unit_coupling_levels(spectrum_g1):
    # Frozen from N = 800 / 1200 runs with different basis frequencies.
    assert spectrum_g1.e0 == pytest.approx(0.8037706512, abs=1e-10)
    assert spectrum_g1.e1 == pytest.approx(2.7378922680, abs=1e-10)
    assert spectrum_g1.gap == pytest.approx(1.9341216168, abs=1e-10)
    assert np.all(np.diff(spectrum_g1.energies) > 0)


def test_basis_frequency_invariance_and_variational_decrease():
    base = exact_spectrum(UNIT, BasisSpec(200))
    shifted = exact_spectrum(UNIT, BasisSpec(200, 1.3 * base.basis_frequency))
    assert shifted.e0 == pytest.approx(base.e0, abs=1e-10)
    e0s = [exact_spectrum(UNIT, BasisSpec(n, 1.0)).e0 for n in (10, 20, 40, 80)]
    assert all(a >= b - 1e-13 for a, b in zip(e0s, e0s[1:]))


def test_parity_blocks_interleave():
    h = build_hamiltonian(UNIT, 120, 1.8)
    even, odd = (np.linalg.eigvalsh(b) for b in parity_blocks(h))
    full = np.linalg.eigvalsh(h)
    merged = np.sort(np.concatenate([even, odd]))
    assert np.allclose(merged, full, atol=1e-12)
    # The ground state is even and levels alternate in parity at the bottom.
    assert full[0] == pytest.approx(even[0]) and full[1] == pytest.approx(odd[0])


def test_validity_floor_and_threshold():
    spec = exact_spectrum(UNIT, BasisSpec(200))
    with pytest.raises(ValidityError):
        exact_partition(0.01, spec)
    mb = minimal_beta(spec)
    with pytest.raises(ValidityError) as info:
        exact_partition(0.5 * mb, spec)
    assert info.value.minimal_beta == pytest.approx(mb)
    z = exact_partition(mb * 1.01, spec)
    assert tail_bound(mb * 1.01, spec) < 1e-12 * z.z


def test_converged_partition_grows_basis(spectrum_g1):
    z = converged_partition(0.1, UNIT)
    assert z.log_z == pytest.approx(exact_partition(0.1, spectrum_g1).log_z, abs=1e-11)


def test_high_temperature_close_to_classical(spectrum_g1):
    # The quantum correction at beta = 0.1 is about -beta^2 <V''> / 24.
    ratio = exact_partition(0.1, spectrum_g1).z / classical_partition(0.1, UNIT).z
    assert -0.007 < ratio - 1 < -0.004


def test_temperature_energies(spectrum_g1):
    res = exact_temperature_energies(30.0, spectrum_g1)
    assert res.gap_beta == pytest.approx(spectrum_g1.gap, rel=1e-12)
    warm = exact_temperature_energies(1.0, spectrum_g1)
    assert warm.e0_beta < spectrum_g1.e0


def test_cache_round_trip(tmp_path):
    spec = exact_spectrum(UNIT, BasisSpec(40))
    path = tmp_path / "levels.txt"
    save_spectrum(spec, path)
    back = load_spectrum(path)
    assert np.array_equal(back.energies, spec.energies)
    assert (back.converged_count, back.basis_size, back.basis_frequency) == (
        spec.converged_count, spec.basis_size, spec.basis_frequency)
    assert path.read_text().startswith("# omega=1.0 g=1.0 N=40")
    (tmp_path / "bad.txt").write_text("0 1.0\n")
    with pytest.raises(DomainError):
        load_spectrum(tmp_path / "bad.txt")
