"""
Módulo com a classe abstrata base para todos os verificadores.

Um verificador confere instâncias concretas de uma congruência ou de uma
cota para ν_p e devolve um DataFrame com uma linha por instância e a coluna
booleana ``satisfeito``.
"""

import logging
from abc import ABC, abstractmethod
from typing import Any

import pandas as pd

from qmf.exceptions import ValidationError, WeightMismatchError
from qmf.qmring import form_polynomial
from qmf.utils import (
    expand_forma,
    peso_da_forma,
    validar_inteiro,
    validar_intervalo,
    validar_peso,
    validar_primo,
)


class AbstractVerificador(ABC):
    """Classe abstrata base para todos os verificadores.

    Fornece logging, validação de parâmetros e o laço sobre listas de valores
    (por exemplo, vários primos numa única chamada).

    Args:
        nome_verificador: Identificador do verificador (o mesmo usado no CLI).
        debug: Se True, ativa logs de depuração.
        progresso: Se True, mostra barras de progresso do tqdm.

    Atributos:
        nome_verificador: Identificador do verificador.
        debug: Flag para modo de depuração.
        progresso: Flag das barras de progresso.
        logger: Logger configurado para o verificador.
    """

    parametros_obrigatorios: tuple[str, ...] = ()

    def __init__(self, nome_verificador: str, debug: bool = True, progresso: bool = True):
        """Inicializa o AbstractVerificador com configuração comum."""
        self.nome_verificador: str = nome_verificador
        self.debug: bool = debug
        self.progresso: bool = progresso

        self._start_logger()

    def _start_logger(self) -> None:
        """Configura o logger para o verificador."""
        self.logger = logging.getLogger(self.nome_verificador)
        if not self.logger.handlers:
            handler = logging.StreamHandler()
            formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
            handler.setFormatter(formatter)
            self.logger.addHandler(handler)
        self.logger.propagate = False
        self.logger.setLevel(logging.DEBUG if self.debug else logging.INFO)

    def _validar_parametros(self, **kwargs) -> dict[str, Any]:
        """Valida e normaliza os parâmetros antes da verificação.

        Parâmetros reconhecidos: ``p`` (primo ≥ 5, ou lista de primos), ``m``,
        ``e`` e ``cap`` (inteiros ≥ 1), ``intervalo`` ("a..b", int ou range),
        ``forma`` (expressão, ver ``expand_forma``) e ``k`` (peso, conferido
        contra o peso inferido da forma). Subclasses podem sobrescrever, mas
        devem chamar super()._validar_parametros(**kwargs).

        Args:
            **kwargs: Parâmetros a serem validados.

        Returns:
            dict: Parâmetros validados. Quando há ``forma``, inclui também
            ``f`` (o IsobaricPoly) e ``k`` (o peso).

        Raises:
            ValidationError: Se algum parâmetro for inválido ou obrigatório estiver ausente.
            WeightMismatchError: Se ``k`` divergir do peso da forma.
        """
        params = {chave: valor for chave, valor in kwargs.items() if valor is not None}

        for nome in self.parametros_obrigatorios:
            if nome not in params:
                raise ValidationError(f"Parâmetro obrigatório ausente para '{self.nome_verificador}': '{nome}'.")

        if "p" in params:
            if isinstance(params["p"], (list, tuple)):
                params["p"] = [validar_primo(p) for p in params["p"]]
            else:
                params["p"] = validar_primo(params["p"])

        for nome in ("m", "e", "cap"):
            if nome in params:
                params[nome] = validar_inteiro(params[nome], nome, minimo=1)

        if "intervalo" in params:
            params["intervalo"] = validar_intervalo(params["intervalo"])

        if "forma" in params:
            fatores = expand_forma(str(params["forma"]))
            peso = peso_da_forma(fatores)
            if "k" in params and validar_peso(params["k"]) != peso:
                raise WeightMismatchError(
                    f"Peso declarado {params['k']} difere do peso {peso} da forma '{params['forma']}'"
                )
            params["fatores"] = fatores
            params["f"] = form_polynomial(fatores)
            params["k"] = peso
        elif "k" in params:
            params["k"] = validar_peso(params["k"])

        return params

    @staticmethod
    def _exigir_modular(params: dict[str, Any]) -> None:
        if params["f"].has_z():
            raise ValidationError(f"A forma '{params['forma']}' precisa ser modular (sem e2).")

    @staticmethod
    def _exigir_p_3_mod_4(p: int) -> None:
        if p % 4 != 3:
            raise ValidationError(f"Esta verificação exige p ≡ 3 (mod 4): {p}.")

    def verificar(self, **kwargs) -> pd.DataFrame:
        """Método principal: valida os parâmetros e confere as instâncias.

        Args:
            **kwargs: Parâmetros da verificação. Se ``p`` for uma lista, cada
                primo é verificado em sequência e os resultados são
                concatenados com a coluna ``p``.

        Returns:
            pd.DataFrame: Uma linha por instância, com a coluna ``satisfeito``.

        Raises:
            ValidationError: Se algum parâmetro for inválido.
        """
        kwargs = self._validar_parametros(**kwargs)
        descricao = {chave: str(valor) for chave, valor in kwargs.items() if chave not in ("f", "fatores")}
        self.logger.info(f"Iniciando verificação com parâmetros {descricao}")

        if isinstance(kwargs.get("p"), list):
            dfs: list[pd.DataFrame] = []
            for p in kwargs["p"]:
                self.logger.info(f"Iniciando verificação para p={p}")
                df = self._verificar(**{**kwargs, "p": p})
                dfs.append(df.assign(p=p))
            result = pd.concat(dfs, ignore_index=True) if dfs else pd.DataFrame(columns=["satisfeito"])
        else:
            result = self._verificar(**kwargs)

        falhas = int((~result["satisfeito"].astype(bool)).sum())
        if falhas:
            self.logger.warning(f"{falhas} de {len(result)} instâncias não satisfeitas")
        else:
            self.logger.info(f"Verificação finalizada: {len(result)} instâncias satisfeitas")
        return result

    @abstractmethod
    def _verificar(self, **params) -> pd.DataFrame:
        """Confere as instâncias para parâmetros já validados (p é um único primo).

        Args:
            **params: Parâmetros validados por ``_validar_parametros``.

        Returns:
            pd.DataFrame: Resultado com a coluna booleana ``satisfeito``.
        """
        ...

