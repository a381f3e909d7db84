"""
Interface de linha de comando.

Cada subcomando devolve um objeto JSON

    {"command": ..., "inputs": {...}, "results": [...], "version": ..., "runtime_ms": ...}

em que inteiros grandes e racionais são strings. Códigos de saída: 0 sucesso,
1 verificação não satisfeita, 2 erro de uso, 3 falha de asserção interna.

Exemplos:
    qmf expand theta --prec 10 --format plain
    qmf verify romik-pm --p 7 --m 2 --range 25..30
    qmf nu --form theta --n 25 --p 5
    qmf verify thm1.5 --p 7 --m 2 --range 25..30
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

import pandas as pd

from . import __version__
from .cmtaylor import cm_eval, congruence_scan, ladder_for, romik_sequence
from .exceptions import InternalAssertionError, PrecisionExhausted, QMFError
from .padic import CONVENCOES_LIFT, filtration_bound, nu_p, verify_filtration_witness
from .qmring import GUARDA, IsobaricPoly, base_gamma14, decompose_gamma14, form_polynomial
from .qseries import form_series
from .utils import (
    expand_forma,
    formatar_racional,
    peso_da_forma,
    validar_inteiro,
    validar_intervalo,
    validar_peso,
)
from .verificador_manager import nomes_verificadores, verificador

logger = logging.getLogger("qmf")

EXIT_OK = 0
EXIT_FALHA = 1
EXIT_USO = 2
EXIT_INTERNO = 3

ALIASES_VERIFICADOR = {"thm1.5": "romik-pm"}


@dataclass(frozen=True)
class RunConfig:
    """Configuração validada de uma execução.

    Atributos:
        command: Subcomando.
        forma: Expressão da forma (theta, f2, e2, eisenstein:k e produtos).
        k: Peso declarado (conferido contra o peso inferido).
        n: Ordem da derivada.
        p: Primos (um ou mais).
        m: Expoente do módulo.
        prec: Precisão da série q.
        intervalo: Intervalo "a..b" de n.
        cap: Teto de ν_p.
        lift: Convenção de levantamento.
        verificador: Identificador do verificador.
        e: Expoente de p em D^{p^e} (verificador nonmodular).
        n_max: Maior n do oráculo.
        digits: Dígitos do oráculo.
        peso_esperado: Peso final esperado da filtração.
        formato: "json" ou "plain".
        timing: Se False, runtime_ms sai como null.
        debug: Logs de depuração em stderr.
    """

    command: str
    forma: str | None = None
    k: str | None = None
    n: int | None = None
    p: tuple[int, ...] = ()
    m: int | None = None
    prec: int | None = None
    intervalo: str | None = None
    cap: int | None = None
    lift: str | None = None
    verificador: str | None = None
    e: int | None = None
    n_max: int | None = None
    digits: int | None = None
    peso_esperado: str | None = None
    formato: str = "json"
    timing: bool = True
    debug: bool = False

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> RunConfig:
        valores = {nome: getattr(ns, nome) for nome in cls.__dataclass_fields__ if hasattr(ns, nome)}
        valores["p"] = tuple(ns.p or ()) if hasattr(ns, "p") else ()
        valores["forma"] = getattr(ns, "forma", None) or getattr(ns, "forma_posicional", None)
        return cls(**{chave: valor for chave, valor in valores.items() if valor is not None})

    def inputs(self) -> dict[str, Any]:
        """Entradas efetivas do subcomando (sem as flags de saída)."""
        ignorar = {"command", "formato", "timing", "debug"}
        entradas = {}
        for chave, valor in asdict(self).items():
            if chave in ignorar or valor is None or valor == ():
                continue
            entradas[chave] = list(valor) if isinstance(valor, tuple) else valor
        return entradas

    def primo_unico(self) -> int:
        if len(self.p) != 1:
            raise argparse.ArgumentTypeError(f"'{self.command}' aceita exatamente um primo --p")
        return self.p[0]


@dataclass
class Saida:
    """Resultado de um subcomando: linhas do JSON, texto plano e veredito."""

    results: list[dict[str, Any]]
    texto: list[str] = field(default_factory=list)
    falhou: bool = False


def _forma_e_peso(config: RunConfig) -> tuple[dict[str, int], Fraction]:
    if not config.forma:
        raise argparse.ArgumentTypeError(f"'{config.command}' exige a forma")
    fatores = expand_forma(config.forma)
    peso = peso_da_forma(fatores)
    if config.k is not None and validar_peso(config.k) != peso:
        raise argparse.ArgumentTypeError(f"Peso --k {config.k} difere do peso {formatar_racional(peso)} da forma")
    return fatores, peso


def _termos(P: IsobaricPoly) -> list[dict[str, Any]]:
    return [{"a": a, "b": b, "c": c, "coef": formatar_racional(coef)} for (a, b, c), coef in P.sorted_terms()]


def _linhas_frame(df: pd.DataFrame) -> list[dict[str, Any]]:
    return [{chave: _escalar(valor) for chave, valor in linha.items()} for linha in df.to_dict(orient="records")]


def _escalar(valor: Any) -> Any:
    if hasattr(valor, "item"):
        valor = valor.item()
    if isinstance(valor, Fraction):
        return formatar_racional(valor)
    if isinstance(valor, int) and not isinstance(valor, bool) and abs(valor) >= 2 ** 53:
        return str(valor)
    return valor


def _texto_frame(df: pd.DataFrame) -> list[str]:
    return [df.to_string(index=False)]


def cmd_expand(config: RunConfig) -> Saida:
    fatores, _ = _forma_e_peso(config)
    N = validar_inteiro(config.prec if config.prec is not None else 10, "prec", minimo=1)
    serie = form_series(fatores, N)
    resultado = {
        "forma": config.forma,
        "prec": N,
        "serie": str(serie),
        "coeficientes": [formatar_racional(c) for c in serie.coeffs],
    }
    return Saida([resultado], [str(serie)])


def cmd_decompose(config: RunConfig) -> Saida:
    fatores, peso = _forma_e_peso(config)
    minimo = len(base_gamma14(peso)) + GUARDA
    N = validar_inteiro(config.prec if config.prec is not None else minimo, "prec", minimo=1)
    if "e2" in fatores:
        P = form_polynomial(fatores)
    else:
        P = decompose_gamma14(form_series(fatores, N), peso)
    resultado = {"forma": config.forma, "k": formatar_racional(peso), "polinomio": str(P), "termos": _termos(P)}
    return Saida([resultado], [str(P)])


def cmd_deriv(config: RunConfig) -> Saida:
    fatores, peso = _forma_e_peso(config)
    n = validar_inteiro(config.n, "n")
    f = form_polynomial(fatores)
    derivada = ladder_for(f).derivative(n, progress=sys.stderr.isatty())
    resultado: dict[str, Any] = {
        "forma": config.forma,
        "n": n,
        "k": formatar_racional(peso + 2 * n),
        "polinomio": str(derivada),
        "termos": _termos(derivada),
    }
    texto = [str(derivada)]
    if not f.has_z():
        resultado["c_n"] = str(cm_eval(derivada))
        texto.append(f"c_{n} = {resultado['c_n']}")
    return Saida([resultado], texto)


def cmd_nu(config: RunConfig) -> Saida:
    fatores, _ = _forma_e_peso(config)
    p = config.primo_unico()
    n = validar_inteiro(config.n if config.n is not None else 0, "n")
    f = form_polynomial(fatores)
    derivada = ladder_for(f).derivative(n, progress=sys.stderr.isatty())
    valor = nu_p(derivada, p, cap=config.cap, lift=config.lift or "canonical")
    resultado = {"forma": config.forma, "n": n, "p": p, "nu": str(valor), "teto_atingido": valor.lower_bound}
    return Saida([resultado], [str(valor)])


def cmd_filtration(config: RunConfig) -> Saida:
    fatores, peso = _forma_e_peso(config)
    p = config.primo_unico()
    m = validar_inteiro(config.m if config.m is not None else 1, "m", minimo=1)
    precisao = validar_inteiro(config.prec if config.prec is not None else 40, "prec", minimo=1)
    serie = form_series(fatores, max(precisao, len(base_gamma14(peso)) + GUARDA))
    limite = filtration_bound(serie, peso, p, m)
    testemunha = verify_filtration_witness(serie, peso, p, m, precision=precisao)
    resultado = {
        "forma": config.forma,
        "k": formatar_racional(peso),
        "p": p,
        "m": m,
        "peso": str(limite),
        "quedas": limite.drops,
        "testemunha": testemunha,
    }
    return Saida([resultado], [str(limite)], falhou=not testemunha)


def cmd_romik(config: RunConfig) -> Saida:
    intervalo = validar_intervalo(config.intervalo if config.intervalo is not None else "0..5")
    valores = romik_sequence(intervalo[-1], progress=sys.stderr.isatty())
    resultados = [{"n": n, "d": str(valores[n])} for n in intervalo]
    return Saida(resultados, [f"{r['n']} {r['d']}" for r in resultados])


def _kwargs_verificador(config: RunConfig) -> dict[str, Any]:
    kwargs: dict[str, Any] = {
        "forma": config.forma,
        "k": config.k,
        "m": config.m,
        "intervalo": config.intervalo,
        "cap": config.cap,
        "e": config.e,
        "n_max": config.n_max,
        "digits": config.digits,
        "peso_esperado": config.peso_esperado,
        "precisao": config.prec,
    }
    if config.p:
        kwargs["p"] = config.p[0] if len(config.p) == 1 else list(config.p)
    return {chave: valor for chave, valor in kwargs.items() if valor is not None}


def _executar_verificador(nome: str, config: RunConfig) -> Saida:
    instancia = verificador(nome, debug=config.debug, progresso=sys.stderr.isatty())
    df = instancia.verificar(**_kwargs_verificador(config))
    return Saida(_linhas_frame(df), _texto_frame(df), falhou=not bool(df["satisfeito"].all()))


def cmd_verify(config: RunConfig) -> Saida:
    if not config.verificador:
        raise argparse.ArgumentTypeError(f"Informe o verificador: {', '.join(nomes_verificadores())}")
    nome = ALIASES_VERIFICADOR.get(config.verificador, config.verificador)
    return _executar_verificador(nome, config)


def cmd_oracle_check(config: RunConfig) -> Saida:
    return _executar_verificador("oracle", config)


def cmd_scan(config: RunConfig) -> Saida:
    p = config.primo_unico()
    m = validar_inteiro(config.m if config.m is not None else 1, "m", minimo=1)
    intervalo = validar_intervalo(config.intervalo if config.intervalo is not None else "0..10")
    df = congruence_scan(p, m, intervalo, progress=sys.stderr.isatty()).to_frame()
    return Saida(_linhas_frame(df), _texto_frame(df))


COMANDOS: dict[str, Callable[[RunConfig], Saida]] = {
    "expand": cmd_expand,
    "decompose": cmd_decompose,
    "deriv": cmd_deriv,
    "nu": cmd_nu,
    "filtration": cmd_filtration,
    "romik": cmd_romik,
    "verify": cmd_verify,
    "oracle-check": cmd_oracle_check,
    "scan": cmd_scan,
}


def _comum() -> argparse.ArgumentParser:
    comum = argparse.ArgumentParser(add_help=False)
    comum.add_argument("--format", dest="formato", choices=("json", "plain"), default="json")
    comum.add_argument("--no-timing", dest="timing", action="store_false", help="runtime_ms sai como null")
    comum.add_argument("--debug", action="store_true", help="logs de depuração em stderr")
    return comum


def build_parser() -> argparse.ArgumentParser:
    comum = _comum()
    parser = argparse.ArgumentParser(
        prog="qmf", allow_abbrev=False, description="Formas quasimodulares em Γ₁(4) e a sequência d(n)."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def comando(nome: str, ajuda: str) -> argparse.ArgumentParser:
        return sub.add_parser(nome, help=ajuda, parents=[comum], allow_abbrev=False)

    def com_forma(nome: str, ajuda: str) -> argparse.ArgumentParser:
        subparser = comando(nome, ajuda)
        subparser.add_argument("forma_posicional", nargs="?", metavar="forma")
        subparser.add_argument("--form", dest="forma")
        return subparser

    expand = com_forma("expand", "expansão q de uma forma")
    expand.add_argument("--prec", type=int)

    decompose = com_forma("decompose", "polinômio 𝒢(f; X, Y, Z) de uma forma")
    decompose.add_argument("--k")
    decompose.add_argument("--prec", type=int)

    deriv = com_forma("deriv", "D^n f no modelo polinomial e c_n(f)")
    deriv.add_argument("--k")
    deriv.add_argument("--n", type=int, required=True)

    nu = com_forma("nu", "ν_p(D^n f)")
    nu.add_argument("--k")
    nu.add_argument("--n", type=int, default=0)
    nu.add_argument("--p", type=int, action="append", required=True)
    nu.add_argument("--cap", type=int)
    nu.add_argument("--lift", choices=CONVENCOES_LIFT, default="canonical")

    filtration = com_forma("filtration", "cota da filtração mod p^m")
    filtration.add_argument("--k")
    filtration.add_argument("--p", type=int, action="append", required=True)
    filtration.add_argument("--m", type=int, default=1)
    filtration.add_argument("--prec", type=int)

    romik = comando("romik", "d(n) exato para n no intervalo")
    romik.add_argument("intervalo", nargs="?", default="0..5")

    verify = comando("verify", "confere instâncias de uma congruência")
    verify.add_argument("verificador", choices=nomes_verificadores() + list(ALIASES_VERIFICADOR))
    verify.add_argument("--form", dest="forma")
    verify.add_argument("--k")
    verify.add_argument("--p", type=int, action="append")
    verify.add_argument("--m", type=int)
    verify.add_argument("--range", dest="intervalo")
    verify.add_argument("--cap", type=int)
    verify.add_argument("--e", type=int)
    verify.add_argument("--n-max", dest="n_max", type=int)
    verify.add_argument("--digits", type=int)
    verify.add_argument("--expected-weight", dest="peso_esperado")
    verify.add_argument("--prec", type=int)

    oracle = comando("oracle-check", "motor exato contra o oráculo numérico")
    oracle.add_argument("--n-max", dest="n_max", type=int, default=5)
    oracle.add_argument("--digits", type=int)

    scan = comando("scan", "varredura exploratória de ord_p(d(n))")
    scan.add_argument("--p", type=int, action="append", required=True)
    scan.add_argument("--m", type=int, default=1)
    scan.add_argument("--range", dest="intervalo", default="0..10")

    return parser


def _configurar_logging(debug: bool) -> None:
    if not debug:
        return
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s'))
        logger.addHandler(handler)
    logger.setLevel(logging.DEBUG)


def _emitir(config: RunConfig, corpo: dict[str, Any], texto: list[str], inicio: float) -> None:
    runtime_ms = round((time.perf_counter() - inicio) * 1000) if config.timing else None
    if config.formato == "plain":
        for linha in texto:
            print(linha)
        return
    documento = {
        "command": config.command,
        "inputs": config.inputs(),
        **corpo,
        "version": __version__,
        "runtime_ms": runtime_ms,
    }
    print(json.dumps(documento, ensure_ascii=False, default=_escalar))


def _codigo_de_erro(exc: Exception) -> int:
    if isinstance(exc, InternalAssertionError):
        return EXIT_INTERNO
    if isinstance(exc, PrecisionExhausted):
        return EXIT_FALHA
    return EXIT_USO


def main(argv: Sequence[str] | None = None) -> int:
    """Ponto de entrada do console script ``qmf``."""
    args = build_parser().parse_args(argv)
    config = RunConfig.from_args(args)
    _configurar_logging(config.debug)
    inicio = time.perf_counter()

    try:
        saida = COMANDOS[config.command](config)
    except (QMFError, ValueError, argparse.ArgumentTypeError) as exc:
        codigo = _codigo_de_erro(exc)
        logger.debug(f"Falha em '{config.command}': {exc!r}")
        erro = {"error": {"tipo": type(exc).__name__, "mensagem": str(exc)}, "results": []}
        _emitir(config, erro, [f"erro: {exc}"], inicio)
        return codigo
    except Exception as exc:
        logger.debug(f"Falha inesperada em '{config.command}'", exc_info=True)
        erro = {"error": {"tipo": type(exc).__name__, "mensagem": str(exc)}, "results": []}
        _emitir(config, erro, [f"erro interno: {exc}"], inicio)
        return EXIT_INTERNO

    _emitir(config, {"results": saida.results}, saida.texto, inicio)
    return EXIT_FALHA if saida.falhou else EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
