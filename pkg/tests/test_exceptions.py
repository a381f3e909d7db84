"""Testes unitários para qmf.exceptions.

Cobre a hierarquia de exceções, os atributos opcionais e a separação entre
erros de entrada, erros de domínio e violações de invariantes internos.
"""

import pytest

from qmf.exceptions import (
    DenominatorNotPUnit,
    InsufficientPrecision,
    InternalAssertionError,
    InvalidBracket,
    NonIntegerResult,
    NonModularResidue,
    NormalizationError,
    NotInSpan,
    NotMonicInX,
    PathDisagreement,
    PrecisionExhausted,
    QMFError,
    UnexpectedSupport,
    ValidationError,
    WeightMismatchError,
)


class TestQMFError:
    """QMFError é a raiz da hierarquia de exceções."""

    def test_eh_subclasse_de_exception(self):
        assert issubclass(QMFError, Exception)

    def test_mensagem_preserved(self):
        assert str(QMFError("mensagem de teste")) == "mensagem de teste"

    @pytest.mark.parametrize(
        "classe",
        [
            ValidationError,
            DenominatorNotPUnit,
            NotInSpan,
            InsufficientPrecision,
            NotMonicInX,
            InvalidBracket,
            WeightMismatchError,
            PrecisionExhausted,
            InternalAssertionError,
        ],
    )
    def test_capturavel_como_qmf_error(self, classe):
        with pytest.raises(QMFError):
            raise classe("boom")


class TestInternalAssertionError:
    """Violações de invariantes formam uma família à parte."""

    @pytest.mark.parametrize(
        "classe",
        [NonModularResidue, NonIntegerResult, UnexpectedSupport, NormalizationError, PathDisagreement],
    )
    def test_hierarquia(self, classe):
        assert issubclass(classe, InternalAssertionError)

    @pytest.mark.parametrize("classe", [ValidationError, PrecisionExhausted, NotInSpan])
    def test_erros_de_entrada_e_dominio_ficam_fora(self, classe):
        assert not issubclass(classe, InternalAssertionError)


class TestAtributos:
    def test_denominator_not_p_unit(self):
        exc = DenominatorNotPUnit("1/5 mod 5", p=5, valor="1/5")
        assert exc.p == 5
        assert exc.valor == "1/5"

    def test_denominator_not_p_unit_sem_atributos(self):
        exc = DenominatorNotPUnit("erro")
        assert exc.p is None and exc.valor is None

    def test_not_in_span(self):
        assert NotInSpan("resíduo", residuo_indice=7).residuo_indice == 7

    def test_insufficient_precision(self):
        exc = InsufficientPrecision("curta", precisao=5, necessaria=8)
        assert (exc.precisao, exc.necessaria) == (5, 8)

    def test_precision_exhausted(self):
        exc = PrecisionExhausted("divergiu", estimativa=1.0, erro=0.5)
        assert exc.estimativa == 1.0
        assert exc.erro == 0.5
