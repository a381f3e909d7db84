"""Configuração compartilhada do pytest para a suíte qmf.

A fixture ``nu_cap_padrao`` remove QMF_NU_CAP do ambiente para que os testes
de ν_p não dependam da configuração de quem roda a suíte. A fixture
``polinomio_aleatorio`` gera polinômios isobáricos esparsos a partir de um
``random.Random`` com semente fixa.
"""

import random
from fractions import Fraction

import pytest

from qmf.qmring import IsobaricPoly


@pytest.fixture(autouse=True)
def nu_cap_padrao(monkeypatch):
    monkeypatch.delenv("QMF_NU_CAP", raising=False)


def _gerar_polinomio(
    rng: random.Random,
    peso,
    termos: int = 3,
    com_z: bool = True,
    grau_x_max: int | None = None,
    coef_max: int = 30,
    denominadores: tuple[int, ...] = (1,),
) -> IsobaricPoly:
    """Polinômio não nulo de peso ``peso`` com até ``termos`` monômios X^a Y^b Z^c."""
    dobro = int(2 * Fraction(peso))
    s_max = dobro // 4
    s_min = 0 if grau_x_max is None else max(0, -(-(dobro - grau_x_max) // 4))
    if s_min > s_max:
        raise ValueError(f"Nenhum monômio de peso {peso} com grau em X ≤ {grau_x_max}")

    monomios: dict[tuple[int, int, int], Fraction] = {}
    for _ in range(termos):
        s = rng.randint(s_min, s_max)
        c = rng.randint(0, s) if com_z else 0
        exp = (dobro - 4 * s, s - c, c)
        coef = Fraction(rng.choice((-1, 1)) * rng.randint(1, coef_max), rng.choice(denominadores))
        monomios[exp] = monomios.get(exp, Fraction(0)) + coef

    P = IsobaricPoly(Fraction(dobro, 2), monomios)
    if P.is_zero():
        return IsobaricPoly.monomial(dobro - 4 * s_max, s_max)
    return P


@pytest.fixture
def polinomio_aleatorio():
    return _gerar_polinomio
