import os
import re
from fractions import Fraction

from qmf.exceptions import ValidationError

NU_CAP_PADRAO = 16


def is_prime(n: int) -> bool:
    """Teste de primalidade por divisão até a raiz (os primos aqui são pequenos)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def validar_primo(p, nome_param: str = "p", minimo: int = 5) -> int:
    """Valida um primo de trabalho.

    Args:
        p: Valor a validar (int ou string numérica).
        nome_param: Nome do parâmetro para mensagens de erro.
        minimo: Menor primo aceito (padrão 5; primos 2 e 3 estão fora do escopo).

    Returns:
        O primo como int.

    Raises:
        ValidationError: Se p não for inteiro, não for primo ou for menor que o mínimo.
    """
    try:
        valor = int(p)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"'{nome_param}' deve ser um inteiro: '{p}'.") from exc

    if not is_prime(valor):
        raise ValidationError(f"'{nome_param}' deve ser primo: {valor}.")
    if valor < minimo:
        raise ValidationError(f"'{nome_param}' deve ser um primo ≥ {minimo}: {valor}.")
    return valor


def validar_inteiro(valor, nome_param: str, minimo: int = 0) -> int:
    """Valida um inteiro com limite inferior.

    Raises:
        ValidationError: Se o valor não for inteiro ou estiver abaixo do mínimo.
    """
    try:
        n = int(valor)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"'{nome_param}' deve ser um inteiro: '{valor}'.") from exc
    if isinstance(valor, float) and valor != n:
        raise ValidationError(f"'{nome_param}' deve ser um inteiro: '{valor}'.")
    if n < minimo:
        raise ValidationError(f"'{nome_param}' deve ser ≥ {minimo}: {n}.")
    return n


def validar_peso(peso, nome_param: str = "k") -> Fraction:
    """Valida e normaliza um peso inteiro ou meio-inteiro.

    Aceita int, Fraction ou strings como "4", "9/2" e "4.5".

    Examples:
        >>> validar_peso("9/2")
        Fraction(9, 2)
        >>> validar_peso(4)
        Fraction(4, 1)

    Raises:
        ValidationError: Se o peso for negativo ou 2k não for inteiro.
    """
    try:
        k = Fraction(str(peso).strip()) if isinstance(peso, str) else Fraction(peso)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"'{nome_param}' não é um peso válido: '{peso}'.") from exc

    if (2 * k).denominator != 1:
        raise ValidationError(f"'{nome_param}' deve ser inteiro ou meio-inteiro: {k}.")
    if k < 0:
        raise ValidationError(f"'{nome_param}' não pode ser negativo: {k}.")
    return k


def validar_intervalo(intervalo) -> range:
    """Converte "a..b" (inclusivo), um int ou um range em range.

    Examples:
        >>> validar_intervalo("25..30")
        range(25, 31)
        >>> validar_intervalo("7")
        range(7, 8)

    Raises:
        ValidationError: Se o formato for inválido ou a > b.
    """
    if isinstance(intervalo, range):
        if intervalo.start < 0 or len(intervalo) == 0:
            raise ValidationError(f"Intervalo vazio ou negativo: {intervalo}.")
        return intervalo
    if isinstance(intervalo, int):
        return range(validar_inteiro(intervalo, "n"), intervalo + 1)

    texto = str(intervalo).strip()
    m = re.match(r"^(\d+)\s*\.\.\s*(\d+)$", texto)
    if m:
        inicio, fim = int(m.group(1)), int(m.group(2))
        if inicio > fim:
            raise ValidationError(f"Início ({inicio}) não pode ser posterior ao fim ({fim}).")
        return range(inicio, fim + 1)
    if re.match(r"^\d+$", texto):
        n = int(texto)
        return range(n, n + 1)

    raise ValidationError(
        f"Intervalo em formato inválido: '{intervalo}'. Use 'a..b' (inclusivo) ou um inteiro."
    )


def nu_cap_configurado() -> int:
    """Lê o teto de ν_p da variável de ambiente QMF_NU_CAP (padrão 16).

    Raises:
        ValidationError: Se a variável existir mas não for um inteiro positivo.
    """
    bruto = os.environ.get("QMF_NU_CAP")
    if bruto is None or not bruto.strip():
        return NU_CAP_PADRAO
    return validar_inteiro(bruto.strip(), "QMF_NU_CAP", minimo=1)


def formatar_racional(r: Fraction | int) -> str:
    """Serializa um racional exato como 'num' ou 'num/den'."""
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def expand_forma(expression: str) -> dict[str, int]:
    """
    Transforma uma expressão de forma (produtos e potências de geradores) no
    dicionário {gerador: expoente} equivalente.

    Geradores reconhecidos: ``theta``, ``f2``, ``e2`` e ``eisenstein:k``.
    Aceita parênteses, ``*`` para produto e ``^`` (ou ``**``) para potência.

    Args:
        expression: Expressão como "theta*eisenstein:4^5" ou "(theta*f2)^2".

    Returns:
        Dicionário ordenado por nome do gerador com o expoente total de cada um.

    Example:
        >>> expand_forma("theta*eisenstein:4^5")
        {'eisenstein:4': 5, 'theta': 1}
        >>> expand_forma("(theta*f2)^2*theta")
        {'f2': 2, 'theta': 3}

    Raises:
        ValidationError: Para parênteses desequilibrados, tokens desconhecidos
            ou expoentes inválidos.
    """
    expression = re.sub(r'\s+', '', expression).lower().replace("**", "^")

    if not expression:
        raise ValidationError("Expressão de forma vazia")
    if '()' in expression:
        raise ValidationError("Parênteses vazios não permitidos")
    if expression.count('(') != expression.count(')'):
        raise ValidationError("Parênteses desequilibrados na expressão")

    tokens = re.findall(r"eisenstein:\d+|theta|f2|e2|\d+|[()*^]|.", expression)

    def parse_expression(tokens: list[str]) -> dict[str, int]:
        """Descida recursiva: produto de potências de átomos."""
        def parse_produto() -> dict[str, int]:
            acumulado = parse_potencia()
            while i[0] < len(tokens) and tokens[i[0]] == "*":
                i[0] += 1  # Consome "*"
                for nome, e in parse_potencia().items():
                    acumulado[nome] = acumulado.get(nome, 0) + e
            return acumulado

        def parse_potencia() -> dict[str, int]:
            base = parse_primary()
            while i[0] < len(tokens) and tokens[i[0]] == "^":
                i[0] += 1  # Consome "^"
                if i[0] >= len(tokens) or not tokens[i[0]].isdigit():
                    raise ValidationError(f"Expoente ausente ou inválido em '{expression}'")
                expoente = int(tokens[i[0]])
                i[0] += 1
                base = {nome: e * expoente for nome, e in base.items()}
            return base

        def parse_primary() -> dict[str, int]:
            if i[0] >= len(tokens):
                raise ValidationError(f"Expressão incompleta: '{expression}'")

            token = tokens[i[0]]
            if token == "(":
                i[0] += 1  # Consome "("
                result = parse_produto()
                if i[0] < len(tokens) and tokens[i[0]] == ")":
                    i[0] += 1  # Consome ")"
                return result
            if token in ("theta", "f2", "e2") or token.startswith("eisenstein:"):
                i[0] += 1
                return {token: 1}
            raise ValidationError(f"Token desconhecido '{token}' em '{expression}'")

        i = [0]
        result = parse_produto()
        if i[0] != len(tokens):
            raise ValidationError(f"Sobrou texto após a posição {i[0]} em '{expression}'")
        return result

    fatores = parse_expression(tokens)

    for nome in fatores:
        if nome.startswith("eisenstein:"):
            k = int(nome.split(":", 1)[1])
            if k < 2 or k % 2:
                raise ValidationError(f"Peso de Eisenstein deve ser par ≥ 2: {k}")

    return {nome: e for nome, e in sorted(fatores.items()) if e > 0}


def peso_gerador(nome: str) -> Fraction:
    """Peso de um gerador da linguagem de formas."""
    if nome == "theta":
        return Fraction(1, 2)
    if nome in ("f2", "e2"):
        return Fraction(2)
    if nome.startswith("eisenstein:"):
        return Fraction(int(nome.split(":", 1)[1]))
    raise ValidationError(f"Gerador desconhecido: '{nome}'")


def peso_da_forma(fatores: dict[str, int]) -> Fraction:
    """Peso total de um produto de geradores.

    Example:
        >>> peso_da_forma({'eisenstein:4': 1, 'theta': 1})
        Fraction(9, 2)
    """
    return sum((peso_gerador(nome) * e for nome, e in fatores.items()), Fraction(0))
