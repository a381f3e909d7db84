"""
Exceções customizadas para o qmf.

Este módulo define exceções específicas para erros comuns durante
o cálculo exato com formas quasimodulares, permitindo tratamento de erros
mais granular e mensagens mais informativas.

Há três famílias:

- erros de entrada (``ValidationError``), que a CLI reporta com código 2;
- erros matemáticos de domínio (denominador divisível por p, forma fora do
  espaço gerado, precisão insuficiente...);
- sinais de bug de implementação (``InternalAssertionError`` e subclasses),
  que a CLI reporta com código 3.
"""


class QMFError(Exception):
    """Exceção base para erros do qmf."""


class ValidationError(QMFError):
    """Exceção para erros de validação de parâmetros.

    Levantada quando parâmetros fornecidos pelo usuário são inválidos,
    como um primo que não é primo, um intervalo vazio ou um peso que não é
    meio-inteiro.
    """


class DenominatorNotPUnit(QMFError):
    """O denominador de um racional é divisível por p.

    Sinaliza que o elemento não pertence a ℤ_(p) e portanto não tem
    redução mod p^m.

    Attributes:
        p: Primo da redução.
        valor: Racional que não pôde ser reduzido.
    """

    def __init__(self, message: str, p: int | None = None, valor=None):
        super().__init__(message)
        self.p = p
        self.valor = valor


class NotInSpan(QMFError):
    """A série não está no espaço gerado pela base do peso pedido.

    Attributes:
        residuo_indice: Primeiro índice em que o resíduo não se anula.
    """

    def __init__(self, message: str, residuo_indice: int | None = None):
        super().__init__(message)
        self.residuo_indice = residuo_indice


class InsufficientPrecision(QMFError):
    """A série não tem coeficientes suficientes para a decomposição.

    Attributes:
        precisao: Precisão disponível.
        necessaria: Precisão mínima exigida.
    """

    def __init__(self, message: str, precisao: int = 0, necessaria: int = 0):
        super().__init__(message)
        self.precisao = precisao
        self.necessaria = necessaria


class NotMonicInX(QMFError):
    """O divisor não tem termo líder X^d com coeficiente 1."""


class InvalidBracket(QMFError):
    """O produto fatorial decrescente [x⌄y] exige x − y inteiro não negativo."""


class WeightMismatchError(QMFError):
    """Operação entre polinômios isobáricos de pesos diferentes, ou monômio
    incompatível com o peso declarado."""


class PrecisionExhausted(QMFError):
    """As duas estimativas numéricas discordam além da tolerância.

    Attributes:
        estimativa: Última estimativa calculada.
        erro: Discrepância observada entre as duas estimativas.
    """

    def __init__(self, message: str, estimativa=None, erro=None):
        super().__init__(message)
        self.estimativa = estimativa
        self.erro = erro


class InternalAssertionError(QMFError):
    """Exceção base para invariantes violados (indicam bug, não erro do usuário)."""


class NonModularResidue(InternalAssertionError):
    """Sobrou um termo em Z numa forma f_n que deveria ser modular."""


class NonIntegerResult(InternalAssertionError):
    """Um valor que deveria ser inteiro (como d(n)) saiu com denominador."""


class UnexpectedSupport(InternalAssertionError):
    """Uma avaliação no ponto CM tem suporte em mais de uma potência de t."""


class NormalizationError(InternalAssertionError):
    """Um valor normalizado tem ord_p negativo para algum p ≥ 5."""


class PathDisagreement(InternalAssertionError):
    """Dois caminhos de cálculo independentes deram resultados diferentes."""
