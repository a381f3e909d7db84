"""Contrato de ``VerificadorNaoModular``."""

import pytest

from qmf.exceptions import ValidationError
from qmf.verificadores import VerificadorNaoModular


@pytest.mark.parametrize("forma", ["theta", "f2"])
def test_d_p(forma):
    df = VerificadorNaoModular(debug=False, progresso=False).verificar(forma=forma, p=5, e=1)
    assert df.to_dict("records")[0]["n"] == 5
    assert df["satisfeito"].all()


def test_varios_primos():
    df = VerificadorNaoModular(debug=False, progresso=False).verificar(forma="theta", p=[5, 7], e=1)
    assert df["n"].tolist() == [5, 7]
    assert df["satisfeito"].all()


def test_e_invalido():
    with pytest.raises(ValidationError, match="'e'"):
        VerificadorNaoModular(debug=False).verificar(forma="theta", p=5, e=3)


def test_forma_nao_modular():
    with pytest.raises(ValidationError):
        VerificadorNaoModular(debug=False).verificar(forma="e2", p=5)


@pytest.mark.slow
def test_e_1_e_2():
    df = VerificadorNaoModular(debug=False, progresso=False).verificar(forma="theta", p=5)
    assert df["n"].tolist() == [5, 25]
    assert df["minimo"].tolist() == [1, 2]
    assert df["satisfeito"].all()
