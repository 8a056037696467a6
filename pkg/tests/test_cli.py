import os

import pytest

from tamebc.cli import run
from tamebc.specfile import render_text
from tamebc import JacobianSpec, klein_four_example_map


JACOBIAN_TEXT = """kind = jacobian
n = 2
p = 2
e_tilde = 1
abelian_jumps = 0
[divisor 1]
t = 1
u = 0
phi_tilde = 1
ab_class = 1
"""


@pytest.fixture
def jacobian_file(tmp_path):
    path = tmp_path / "jac.spec"
    path.write_text(JACOBIAN_TEXT)
    return str(path)


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBasicCommands:
    def test_jumps_res4(self, capsys):
        code, out, err = invoke(capsys, "jumps", "--torus", "res:4")
        assert (code, out) == (0, "0, 1/4, 1/2, 3/4\n")

    def test_jumps_gm(self, capsys):
        code, out, err = invoke(capsys, "jumps", "--torus", "gm")
        assert (code, out) == (0, "0\n")

    def test_zeta_torus_render(self, capsys):
        code, out, err = invoke(capsys, "zeta-torus", "--n", "2", "--p", "2")
        assert (code, out) == (0, "((L-1)*L*z)/(1 - L^1*z^2)\n")

    def test_d_jumps_closed_form(self, capsys):
        code, out, err = invoke(capsys, "d-jumps", "--n", "3", "--d", "7")
        assert (code, out) == (0, "0, 2, 4\n")

    def test_d_jumps_from_torus(self, capsys):
        code, out, err = invoke(
            capsys, "d-jumps", "--torus", "product(gm, norm1)", "--d", "5"
        )
        assert (code, out) == (0, "0, 2\n")

    def test_order(self, capsys):
        code, out, err = invoke(capsys, "order", "--torus", "res:3", "--d", "7")
        assert (code, out) == (0, "6\n")

    def test_conductor(self, capsys):
        code, out, err = invoke(capsys, "conductor", "--torus", "res:5")
        assert (code, out) == (0, "2\n")

    def test_characters(self, capsys):
        code, out, err = invoke(capsys, "characters", "--n", "3", "--d", "7")
        assert (code, out) == (0, "0, 2, 4 (mod 7)\n")

    def test_pole_torus(self, capsys):
        code, out, err = invoke(capsys, "pole", "--n", "2", "--p", "2")
        assert (code, out) == (0, "s=1/2, order=1\n")

    def test_oracle(self, capsys):
        code, out, err = invoke(
            capsys, "oracle-cokernel", "--n", "3", "--d", "7", "--p", "2"
        )
        assert (code, out) == (0, "0, 2, 4\n")

    def test_isogeny_default(self, capsys):
        code, out, err = invoke(capsys, "isogeny")
        assert (code, out) == (0, "isogeny: true, cokernel_order: 16\n")

    def test_isogeny_demo(self, capsys):
        code, out, err = invoke(capsys, "isogeny", "--demo")
        assert code == 0
        assert out == (
            "left: 0, 1/4, 1/2, 3/4\n"
            "right: 0, 1/2, 1/2, 1/2\n"
            "differ: true\n"
        )


class TestSpecFileCommands:
    def test_zeta_jacobian(self, capsys, jacobian_file):
        code, out, err = invoke(capsys, "zeta-jacobian", "--spec", jacobian_file)
        assert code == 0
        assert out == "(2*(L-1)*L*z*(1 + L*z^2))/(1 - L^1*z^2)^2\n"

    def test_pole_jacobian(self, capsys, jacobian_file):
        code, out, err = invoke(capsys, "pole", "--spec", jacobian_file)
        assert (code, out) == (0, "s=1/2, order=2\n")

    def test_components(self, capsys, jacobian_file):
        code, out, err = invoke(
            capsys, "components", "--spec", jacobian_file, "--alpha", "1"
        )
        assert (code, out) == (0, "2\n")

    def test_isogeny_spec_file(self, capsys, tmp_path):
        path = tmp_path / "map.spec"
        path.write_text(render_text(klein_four_example_map()))
        code, out, err = invoke(capsys, "isogeny", "--spec", str(path))
        assert (code, out) == (0, "isogeny: true, cokernel_order: 16\n")

    def test_torus_spec_file(self, capsys, tmp_path):
        path = tmp_path / "torus.spec"
        path.write_text("kind = torus\ntorus = resquot:4\n")
        code, out, err = invoke(capsys, "conductor", "--spec", str(path))
        assert (code, out) == (0, "3/2\n")


class TestPushoutCommands:
    def test_membership(self, capsys):
        code, out, err = invoke(
            capsys, "pushout", "--check", "membership",
            "--gluing", "two-points", "--poly", "pi*t - pi",
        )
        assert (code, out) == (0, "member: true\n")

    def test_nilpotent(self, capsys):
        code, out, err = invoke(
            capsys, "pushout", "--check", "nilpotent", "--gluing", "two-points"
        )
        assert (code, out) == (
            0,
            "member: true, not_in_pi_fiber: true, square_in_pi_fiber: true\n",
        )

    def test_tor_defect(self, capsys):
        code, out, err = invoke(
            capsys, "pushout", "--check", "tor-defect", "--gluing", "two-points"
        )
        assert (code, out) == (0, "tor_defect: 1\n")

    def test_generators(self, capsys):
        code, out, err = invoke(
            capsys, "pushout", "--check", "generators",
            "--gluing", "wild-point", "--eisenstein", "t^2 - pi",
        )
        assert (code, out) == (0, "generates: true\n")

    def test_base_change_wild(self, capsys):
        code, out, err = invoke(
            capsys, "pushout", "--check", "base-change",
            "--gluing", "wild-point", "--eisenstein", "t^3 - pi",
            "--target", "5",
        )
        assert (code, out) == (0, "commutes: true, defect: 0\n")

    def test_base_change_two_points(self, capsys):
        code, out, err = invoke(
            capsys, "pushout", "--check", "base-change",
            "--gluing", "two-points", "--target", "k",
        )
        assert (code, out) == (0, "commutes: false, defect: 1\n")


class TestExitCodes:
    def test_domain_error_is_one_with_name_on_stderr(self, capsys):
        code, out, err = invoke(capsys, "zeta-torus", "--n", "3", "--p", "2")
        assert code == 1
        assert out == ""
        assert err.startswith("NotPurelyWild")

    def test_usage_error_is_two(self, capsys):
        code, out, err = invoke(capsys, "zeta-torus", "--n", "2")
        assert code == 2

    def test_unknown_command_is_two(self, capsys):
        code, out, err = invoke(capsys, "frobnicate")
        assert code == 2

    def test_spec_file_error(self, capsys, tmp_path):
        path = tmp_path / "bad.spec"
        path.write_text("kind = jacobian\nn = 2\n")
        code, out, err = invoke(capsys, "zeta-jacobian", "--spec", str(path))
        assert code == 1
        assert err.startswith("SpecFileError")


class TestDeterminism:
    def test_byte_identical_output(self, capsys, jacobian_file):
        first = invoke(capsys, "zeta-jacobian", "--spec", jacobian_file)
        second = invoke(capsys, "zeta-jacobian", "--spec", jacobian_file)
        assert first == second

    def test_env_precision_override(self, capsys, monkeypatch):
        monkeypatch.setenv("TAMEBC_PRECISION", "128")
        code, out, err = invoke(
            capsys, "oracle-cokernel", "--n", "2", "--d", "25", "--p", "3"
        )
        assert (code, out) == (0, "0, 12\n")

    def test_low_precision_fails_cleanly(self, capsys, monkeypatch):
        monkeypatch.setenv("TAMEBC_PRECISION", "8")
        code, out, err = invoke(
            capsys, "oracle-cokernel", "--n", "2", "--d", "25", "--p", "3"
        )
        assert code == 1
        assert err.startswith("PrecisionExhausted")

    def test_env_degree_bound_override(self, capsys, monkeypatch):
        monkeypatch.setenv("TAMEBC_DEGREE_BOUND", "3")
        args = (
            "pushout", "--check", "membership", "--gluing", "two-points",
            "--poly", "t^4 - t",
        )
        code, out, err = invoke(capsys, *args)
        assert code == 1
        assert err.startswith("DegreeBound")
        monkeypatch.setenv("TAMEBC_DEGREE_BOUND", "6")
        code, out, err = invoke(capsys, *args)
        assert (code, out) == (0, "member: true\n")
