"""Contrato dos verificadores de ν_p."""

import pytest

from qmf.exceptions import ValidationError
from qmf.qmring import calA_p_power
from qmf.verificadores import (
    VerificadorNuD2Hasse,
    VerificadorNuDmp2,
    VerificadorNuDp2,
    VerificadorNuDp2Hasse,
    VerificadorNuDp2Shift,
)

COLUNAS = ["alvo", "p", "nu", "minimo", "satisfeito"]


class TestNuD2Hasse:
    def test_p5_e_p7(self):
        df = VerificadorNuD2Hasse(debug=False).verificar(p=[5, 7])
        assert list(df.columns) == COLUNAS
        assert df["alvo"].tolist() == ["D^2(E_4)", "D^2(E_6)"]
        assert df["satisfeito"].all()


class TestNuDp2:
    def test_exige_forma_modular(self):
        with pytest.raises(ValidationError, match="modular"):
            VerificadorNuDp2(debug=False).verificar(forma="theta*e2", p=5)

    def test_forma_obrigatoria(self):
        with pytest.raises(ValidationError, match="'forma'"):
            VerificadorNuDp2(debug=False).verificar(p=5)

    @pytest.mark.slow
    def test_theta_p5(self):
        df = VerificadorNuDp2(debug=False, progresso=False).verificar(forma="theta", p=5)
        linha = df.to_dict("records")[0]
        assert linha["alvo"] == "D^25(theta)"
        assert linha["minimo"] == 2
        assert linha["satisfeito"]


class TestNuDp2Shift:
    def test_minimo_desloca_com_nu_de_f(self, mocker):
        mocker.patch.object(
            VerificadorNuDp2Shift, "_derivada", return_value=calA_p_power(5, 5).scale(25)
        )
        df = VerificadorNuDp2Shift(debug=False).verificar(forma="eisenstein:4^5", p=5, cap=4)
        linha = df.to_dict("records")[0]
        # ν_5(E₄⁵) = 1, logo o mínimo é 2; o alvo tem ν_5 = 3
        assert linha["minimo"] == 2
        assert linha["nu"] == "3"
        assert linha["satisfeito"]

    @pytest.mark.slow
    def test_e4_p5(self):
        df = VerificadorNuDp2Shift(debug=False, progresso=False).verificar(forma="eisenstein:4", p=5)
        assert df["satisfeito"].all()


class TestNuDmp2:
    def test_m_obrigatorio(self):
        with pytest.raises(ValidationError, match="'m'"):
            VerificadorNuDmp2(debug=False).verificar(forma="theta", p=5)

    def test_alvo_e_minimo(self, mocker):
        derivada = mocker.patch.object(
            VerificadorNuDmp2, "_derivada", return_value=calA_p_power(5, 10).scale(5)
        )
        df = VerificadorNuDmp2(debug=False).verificar(forma="theta", p=5, m=2)
        assert derivada.call_args.args[1] == 50
        assert df.to_dict("records")[0]["minimo"] == 3

    @pytest.mark.slow
    def test_theta_p5_m2(self):
        df = VerificadorNuDmp2(debug=False, progresso=False).verificar(forma="theta", p=5, m=2, cap=3)
        linha = df.to_dict("records")[0]
        assert linha["alvo"] == "D^50(theta)"
        assert linha["minimo"] == 3
        assert linha["satisfeito"]


@pytest.mark.slow
@pytest.mark.integration
def test_nu_dp2_hasse_p5():
    df = VerificadorNuDp2Hasse(debug=False, progresso=False).verificar(p=5)
    assert df["satisfeito"].all()
