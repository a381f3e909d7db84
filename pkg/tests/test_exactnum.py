"""Testes unitários para qmf.exactnum.

Cobre ``ord_p_rational``, ``PadicOrder``, a aritmética em ℚ[t]/(t⁸ − 2) e a
redução de racionais p-inteiros.
"""

import random
from fractions import Fraction

import pytest

from qmf.exactnum import (
    AlgebraicNumber,
    PadicOrder,
    alg_add,
    alg_mul,
    alg_scale,
    alg_sub,
    ord_p_alg,
    ord_p_rational,
    reduce_rational_mod,
)
from qmf.exceptions import DenominatorNotPUnit, ValidationError


def _aleatorio(rng: random.Random) -> AlgebraicNumber:
    return AlgebraicNumber(tuple(Fraction(rng.randint(-50, 50), rng.randint(1, 12)) for _ in range(8)))


class TestOrdPRational:
    def test_inteiro(self):
        assert ord_p_rational(50, 5) == 2

    def test_fracao_com_p_no_denominador(self):
        assert ord_p_rational(Fraction(3, 25), 5) == -2

    def test_zero_e_infinito(self):
        assert ord_p_rational(0, 7).is_infinite

    def test_unidade(self):
        assert ord_p_rational(Fraction(2, 3), 5) == 0


class TestPadicOrder:
    def test_infinito_maior_que_tudo(self):
        inf = PadicOrder.infinito()
        assert inf > PadicOrder(Fraction(1000))
        assert inf >= 3
        assert not inf < 3

    def test_comparacao_com_int(self):
        assert PadicOrder(Fraction(2)) >= 2
        assert PadicOrder(Fraction(1)) < 2

    def test_soma_com_infinito(self):
        assert (PadicOrder(Fraction(1)) + PadicOrder.infinito()).is_infinite

    def test_str(self):
        assert str(PadicOrder.infinito()) == "inf"
        assert str(PadicOrder(Fraction(3))) == "3"
        assert str(PadicOrder(Fraction(1, 2))) == "1/2"


class TestAlgebraicNumber:
    def test_t_elevado_a_8_e_2(self):
        assert AlgebraicNumber.t_power(8) == AlgebraicNumber.from_rational(2)

    def test_t_power_reduz_expoentes_grandes(self):
        # t^21 = t^16 · t^5 = 4 t^5
        assert AlgebraicNumber.t_power(21) == AlgebraicNumber.t_power(5, 4)

    def test_produto_de_potencias(self):
        t5 = AlgebraicNumber.t_power(5)
        assert alg_mul(t5, t5) == AlgebraicNumber.t_power(2, 2)

    def test_quadrado_de_t4_e_2(self):
        raiz2 = AlgebraicNumber.t_power(4)
        assert raiz2 * raiz2 == AlgebraicNumber.from_rational(2)

    def test_support(self):
        alpha = AlgebraicNumber.t_power(3, 7) + 1
        assert alpha.support == frozenset({0, 3})

    def test_zero(self):
        assert AlgebraicNumber.zero().is_zero
        assert not AlgebraicNumber.one().is_zero

    def test_coordenadas_erradas(self):
        with pytest.raises(ValueError):
            AlgebraicNumber((Fraction(1),) * 3)

    def test_potencia(self):
        assert AlgebraicNumber.t_power(1) ** 16 == AlgebraicNumber.from_rational(4)

    def test_funcoes_nomeadas(self):
        a = AlgebraicNumber.t_power(1, 3)
        b = AlgebraicNumber.from_rational(Fraction(1, 2))
        assert alg_add(a, b) == a + b
        assert alg_sub(a, b) == a - b
        assert alg_scale(a, 2) == AlgebraicNumber.t_power(1, 6)

    def test_operar_com_tipo_invalido(self):
        with pytest.raises(TypeError):
            AlgebraicNumber.one() + "x"


class TestAxiomasDeAnel:
    """Associatividade, comutatividade e distributividade em 200 elementos aleatórios."""

    def test_axiomas(self):
        rng = random.Random(20241017)
        for _ in range(200):
            a, b, c = _aleatorio(rng), _aleatorio(rng), _aleatorio(rng)
            assert (a * b) * c == a * (b * c)
            assert a * b == b * a
            assert a * (b + c) == a * b + a * c
            assert (a + b) - b == a


class TestOrdPAlg:
    def test_minimo_das_coordenadas(self):
        alpha = AlgebraicNumber.t_power(5, 49) + AlgebraicNumber.t_power(1, 14)
        assert ord_p_alg(alpha, 7) == 1

    def test_zero(self):
        assert ord_p_alg(AlgebraicNumber.zero(), 7).is_infinite

    def test_constantes_cm_sao_p_inteiras(self):
        for p in (5, 7, 11, 13):
            assert ord_p_alg(AlgebraicNumber.t_power(4, Fraction(1, 8)), p) >= 0
            assert ord_p_alg(AlgebraicNumber.t_power(4, -6), p) >= 0

    @pytest.mark.parametrize("p", [2, 3])
    def test_primos_abaixo_de_5_rejeitados(self, p):
        with pytest.raises(ValidationError, match="≥ 5"):
            ord_p_alg(AlgebraicNumber.one(), p)

    @pytest.mark.parametrize("p", [5, 7, 11])
    def test_aditiva_com_suporte_numa_potencia(self, p):
        rng = random.Random(p)
        for _ in range(100):
            alpha = AlgebraicNumber.t_power(rng.randint(0, 7), Fraction(rng.randint(1, 400), rng.randint(1, 50)))
            beta = _aleatorio(rng).scale(p ** rng.randint(0, 3))
            if beta.is_zero:
                continue
            assert ord_p_alg(alpha * beta, p) == ord_p_alg(alpha, p) + ord_p_alg(beta, p)

    @pytest.mark.parametrize("p", [5, 7, 11])
    def test_desigualdade_ultrametrica(self, p):
        rng = random.Random(100 + p)
        for _ in range(100):
            alpha = _aleatorio(rng).scale(p ** rng.randint(0, 2))
            beta = _aleatorio(rng).scale(p ** rng.randint(0, 2))
            assert ord_p_alg(alpha + beta, p) >= min(ord_p_alg(alpha, p), ord_p_alg(beta, p))

    def test_soma_que_cancela(self):
        alpha = AlgebraicNumber.t_power(3, 7)
        assert ord_p_alg(alpha - alpha, 7).is_infinite


class TestReduceRationalMod:
    def test_inverso(self):
        assert reduce_rational_mod(Fraction(1, 6), 5, 2) == 21
        assert (21 * 6) % 25 == 1

    def test_negativo(self):
        assert reduce_rational_mod(-1, 7, 1) == 6

    def test_denominador_divisivel_por_p(self):
        with pytest.raises(DenominatorNotPUnit) as exc:
            reduce_rational_mod(Fraction(1, 10), 5, 1)
        assert exc.value.p == 5
        assert exc.value.valor == Fraction(1, 10)

    @pytest.mark.parametrize("p,m", [(5, 1), (5, 3), (7, 2), (11, 1), (13, 2)])
    def test_homomorfismo_de_aneis(self, p, m):
        rng = random.Random(p * 10 + m)
        modulo = p ** m

        def unidade_p() -> int:
            while True:
                d = rng.randint(1, 500)
                if d % p:
                    return d

        for _ in range(100):
            r = Fraction(rng.randint(-10 ** 6, 10 ** 6), unidade_p())
            s = Fraction(rng.randint(-10 ** 6, 10 ** 6), unidade_p())
            rr, rs = reduce_rational_mod(r, p, m), reduce_rational_mod(s, p, m)
            assert reduce_rational_mod(r + s, p, m) == (rr + rs) % modulo
            assert reduce_rational_mod(r * s, p, m) == rr * rs % modulo
        assert reduce_rational_mod(1, p, m) == 1
