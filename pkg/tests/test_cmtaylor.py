"""Testes unitários para qmf.cmtaylor."""

from fractions import Fraction

import pytest

from qmf.cmtaylor import (
    CM_X,
    CM_Y,
    CM_Z,
    bracket,
    c_n,
    cm_eval,
    cm_eval_generic,
    congruence_scan,
    dn_via_zagier,
    expected_t_power,
    hasse_cm_scan,
    ladder_for,
    nonmodular_min_order,
    nu_bridge,
    romik_d,
    romik_sequence,
    romik_threshold,
    taylor_congruence_scan,
    taylor_threshold,
    zagier_f_sequence,
)
from qmf.exactnum import AlgebraicNumber, PadicOrder
from qmf.exceptions import InvalidBracket, ValidationError, WeightMismatchError
from qmf.qmring import E4_POLY, E6_POLY, IsobaricPoly, X, Y, Z, calA_p_power, d_poly

D_INICIAIS = [1, 1, -1, 51, 849, -26199]


class TestBracket:
    @pytest.mark.parametrize(
        "x,y,esperado",
        [
            (5, 5, 1),
            (5, 3, 20),
            (Fraction(5, 2), Fraction(1, 2), Fraction(15, 4)),
            (Fraction(-1, 2), Fraction(-5, 2), Fraction(3, 4)),
        ],
    )
    def test_valores(self, x, y, esperado):
        assert bracket(x, y) == esperado

    @pytest.mark.parametrize("x,y", [(3, 5), (Fraction(1, 2), 0)])
    def test_invalido(self, x, y):
        with pytest.raises(InvalidBracket):
            bracket(x, y)


class TestZagier:
    @pytest.mark.parametrize(
        "f,k",
        [(X, Fraction(1, 2)), (Y, 2), (X ** 4, 2), (E4_POLY, 4)],
        ids=["theta", "f2", "theta4", "e4"],
    )
    @pytest.mark.parametrize("n", [0, 1, 2, 5, 10, 15])
    def test_concorda_com_derivada_iterada(self, f, k, n):
        assert dn_via_zagier(f, k, n) == ladder_for(f).derivative(n)

    def test_sequencia_sem_termos_em_z(self):
        sequencia = zagier_f_sequence(X, Fraction(1, 2), 8)
        assert len(sequencia) == 9
        for n, forma in enumerate(sequencia.forms):
            assert not forma.has_z()
            assert forma.weight == Fraction(1, 2) + 2 * n

    def test_primeiro_termo(self):
        # f₁ = D f − (k/12)·E₂·f
        sequencia = zagier_f_sequence(E4_POLY, 4, 1)
        assert sequencia[1] == d_poly(E4_POLY) - (Z * E4_POLY).scale(Fraction(1, 3))

    def test_forma_nao_modular(self):
        with pytest.raises(ValidationError):
            zagier_f_sequence(X * Z, Fraction(5, 2), 3)

    def test_peso_divergente(self):
        with pytest.raises(WeightMismatchError):
            zagier_f_sequence(X, 2, 3)


class TestCmEval:
    def test_constantes(self):
        assert CM_X == AlgebraicNumber.t_power(5)
        assert CM_Y == AlgebraicNumber.t_power(4, Fraction(1, 8))
        assert CM_Z == AlgebraicNumber.t_power(4, -6)

    def test_e4(self):
        assert cm_eval(E4_POLY) == AlgebraicNumber.from_rational(264)

    def test_theta(self):
        assert cm_eval(X) == AlgebraicNumber.t_power(5)

    @pytest.mark.parametrize(
        "P",
        [E4_POLY, E6_POLY, d_poly(E4_POLY), X * Y * Z, d_poly(d_poly(X)), IsobaricPoly.zero(3)],
        ids=["e4", "e6", "de4", "xyz", "d2theta", "zero"],
    )
    def test_forma_fechada_concorda_com_generica(self, P):
        assert cm_eval(P) == cm_eval_generic(P)

    @pytest.mark.parametrize("w,esperado", [(Fraction(1, 2), 5), (4, 0), (Fraction(9, 2), 5), (2, 4), (Fraction(5, 2), 1)])
    def test_expected_t_power(self, w, esperado):
        assert expected_t_power(w) == esperado

    def test_suporte_de_polinomio_isobarico(self):
        P = d_poly(X ** 3 * Y)
        assert cm_eval(P).support <= {expected_t_power(P.weight)}


class TestCn:
    def test_c0_theta(self):
        assert c_n(X, Fraction(1, 2), 0) == AlgebraicNumber.t_power(5)

    @pytest.mark.parametrize("n", range(1, 22, 2))
    def test_indices_impares_de_theta_se_anulam(self, n):
        assert c_n(X, Fraction(1, 2), n).is_zero

    def test_c2_theta(self):
        assert c_n(X, Fraction(1, 2), 2) == AlgebraicNumber.t_power(5)

    def test_forma_nao_modular(self):
        with pytest.raises(ValidationError):
            c_n(X * Z, Fraction(5, 2), 1)


class TestRomik:
    def test_valores_iniciais(self):
        assert romik_sequence(5) == D_INICIAIS

    @pytest.mark.parametrize("n,esperado", list(enumerate(D_INICIAIS)))
    def test_romik_d(self, n, esperado):
        assert romik_d(n) == esperado

    @pytest.mark.parametrize("n", [5, 6])
    def test_divisibilidade_por_3(self, n):
        assert romik_d(n) % 3 == 0

    @pytest.mark.parametrize(
        "p,m,esperado",
        [(7, 1, 25), (7, 2, 25), (7, 3, 49), (11, 1, 61), (11, 2, 61), (19, 1, 181)],
    )
    def test_romik_threshold(self, p, m, esperado):
        assert romik_threshold(p, m) == esperado

    def test_taylor_threshold(self):
        assert taylor_threshold(7, 2) == 49
        assert taylor_threshold(7, 1) == 0

    def test_scan_exploratorio_para_p_1_mod_4(self):
        relatorio = congruence_scan(5, 1, "0..5")
        assert relatorio.todas_satisfeitas
        assert [e.n for e in relatorio.entries] == list(range(6))
        assert not any(e.exigido for e in relatorio.entries)
        assert relatorio.entries[3].valor == "51"
        assert relatorio.entries[3].ordem == PadicOrder(0)

    def test_scan_para_frame(self):
        df = congruence_scan(7, 1, "2..4").to_frame()
        assert list(df.columns) == ["n", "alvo", "valor", "ord_p", "minimo", "atinge_minimo", "exigido", "satisfeito"]
        assert df["valor"].tolist() == ["-1", "51", "849"]
        assert df["satisfeito"].all()

    def test_scan_intervalo_invalido(self):
        with pytest.raises(ValidationError):
            congruence_scan(7, 1, "5..2")

    @pytest.mark.slow
    def test_p7_m1_a_partir_do_limiar(self):
        relatorio = congruence_scan(7, 1, "25..35")
        assert all(e.exigido for e in relatorio.entries)
        assert relatorio.todas_satisfeitas

    @pytest.mark.slow
    def test_p7_m2(self):
        relatorio = congruence_scan(7, 2, "25..35")
        assert [e.n for e in relatorio.entries] == list(range(25, 36))
        assert all(e.exigido for e in relatorio.entries)
        assert relatorio.todas_satisfeitas

    @pytest.mark.slow
    def test_inteiros_ate_40(self):
        valores = romik_sequence(40)
        assert len(valores) == 41
        assert all(type(d) is int for d in valores)
        assert valores[:6] == D_INICIAIS
        ladder = ladder_for(X)
        for n in range(0, 81, 2):
            assert c_n(X, Fraction(1, 2), n, ladder).support <= {5}


class TestHasseCM:
    def test_p7(self):
        relatorio = hasse_cm_scan(7, "0..12")
        assert relatorio.alvo == "c_n(E_6)"
        assert all(e.exigido for e in relatorio.entries)
        assert relatorio.todas_satisfeitas

    def test_p11(self):
        assert hasse_cm_scan(11, "0..4").todas_satisfeitas

    def test_p_1_mod_4(self):
        with pytest.raises(ValidationError):
            hasse_cm_scan(5, "0..3")


class TestTaylorScan:
    def test_nada_exigido_com_m_1(self):
        relatorio = taylor_congruence_scan(E6_POLY, 6, 7, 1, "0..3")
        assert not any(e.exigido for e in relatorio.entries)

    @pytest.mark.slow
    @pytest.mark.integration
    def test_e4_mod_49(self):
        relatorio = taylor_congruence_scan(E4_POLY, 4, 7, 2, "49..50")
        assert all(e.exigido for e in relatorio.entries)
        assert relatorio.todas_satisfeitas


class TestNaoModular:
    @pytest.mark.parametrize("f,k", [(X, Fraction(1, 2)), (Y, 2)], ids=["theta", "f2"])
    @pytest.mark.parametrize("p", [5, 7])
    def test_parte_nao_modular_de_d_p(self, f, k, p):
        assert nonmodular_min_order(f, k, p, p) >= 1

    def test_forma_sem_z(self):
        assert nonmodular_min_order(X, Fraction(1, 2), 5, 0).is_infinite

    @pytest.mark.slow
    @pytest.mark.parametrize("f,k", [(X, Fraction(1, 2)), (Y, 2)], ids=["theta", "f2"])
    @pytest.mark.parametrize("p", [5, 7])
    def test_parte_nao_modular_de_d_p_ao_quadrado(self, f, k, p):
        assert nonmodular_min_order(f, k, p, p * p) >= 2


class TestNuBridge:
    def test_hipotese_falha_e_ponte_e_vacua(self):
        assert nu_bridge(X, Fraction(1, 2), 7, 1, 1)

    def test_hipotese_vale(self):
        # ν_7(E₆⁷) ≥ 1 e c_0(E₆⁷) = cm_eval(E₆)⁷ ≡ 0 (mod 7)
        assert nu_bridge(calA_p_power(7, 7), 42, 7, 0, 1)

    def test_p_1_mod_4(self):
        with pytest.raises(ValidationError):
            nu_bridge(X, Fraction(1, 2), 5, 1, 1)
