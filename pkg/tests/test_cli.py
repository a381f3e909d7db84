"""Testes para qmf.cli.

``main(argv)`` é chamado diretamente; a saída é lida com ``capsys``. Os
cálculos pesados são trocados por mocks quando o foco é o código de saída.
"""

import json

import pandas as pd
import pytest

from qmf import __version__
from qmf.cli import EXIT_FALHA, EXIT_INTERNO, EXIT_OK, EXIT_USO, RunConfig, build_parser, main
from qmf.exceptions import NonIntegerResult, PrecisionExhausted


def _json(capsys) -> dict:
    return json.loads(capsys.readouterr().out)


class TestExpand:
    @pytest.mark.parametrize(
        "argv,esperado",
        [
            (["expand", "theta", "--prec", "10"], "1 + 2q + 2q^4 + 2q^9"),
            (["expand", "eisenstein:4", "--prec", "3"], "1 + 240q + 2160q^2"),
            (["expand", "f2", "--prec", "4"], "q + 4q^3"),
        ],
    )
    def test_plain(self, capsys, argv, esperado):
        assert main(argv + ["--format", "plain"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == esperado

    def test_json(self, capsys):
        assert main(["expand", "theta", "--prec", "5"]) == EXIT_OK
        documento = _json(capsys)
        assert set(documento) == {"command", "inputs", "results", "version", "runtime_ms"}
        assert documento["command"] == "expand"
        assert documento["inputs"] == {"forma": "theta", "prec": 5}
        assert documento["results"][0]["coeficientes"] == ["1", "2", "0", "0", "2"]
        assert documento["version"] == __version__
        assert isinstance(documento["runtime_ms"], int)

    def test_no_timing(self, capsys):
        main(["expand", "theta", "--no-timing"])
        assert _json(capsys)["runtime_ms"] is None


class TestDecomposeEDeriv:
    def test_decompose_e4(self, capsys):
        assert main(["decompose", "eisenstein:4"]) == EXIT_OK
        resultado = _json(capsys)["results"][0]
        assert resultado["k"] == "4"
        assert {"a": 4, "b": 1, "c": 0, "coef": "224"} in resultado["termos"]

    def test_decompose_com_e2(self, capsys):
        assert main(["decompose", "theta*e2", "--format", "plain"]) == EXIT_OK
        assert "Z" in capsys.readouterr().out

    def test_peso_divergente(self, capsys):
        assert main(["decompose", "theta", "--k", "4"]) == EXIT_USO
        assert _json(capsys)["error"]["tipo"] == "ArgumentTypeError"

    def test_deriv_c_n(self, capsys):
        assert main(["deriv", "theta", "--n", "2"]) == EXIT_OK
        resultado = _json(capsys)["results"][0]
        assert resultado["k"] == "9/2"
        assert "c_n" in resultado

    def test_deriv_nao_modular_sem_c_n(self, capsys):
        assert main(["deriv", "e2", "--n", "1"]) == EXIT_OK
        assert "c_n" not in _json(capsys)["results"][0]


class TestNuEFiltracao:
    def test_nu_theta(self, capsys):
        assert main(["nu", "theta", "--p", "5"]) == EXIT_OK
        resultado = _json(capsys)["results"][0]
        assert resultado["nu"] == "0"
        assert resultado["teto_atingido"] is False

    def test_nu_teto(self, capsys):
        assert main(["nu", "eisenstein:4^5", "--p", "5", "--cap", "1"]) == EXIT_OK
        resultado = _json(capsys)["results"][0]
        assert resultado["nu"] == ">=1"
        assert resultado["teto_atingido"] is True

    def test_nu_varios_primos(self, capsys):
        assert main(["nu", "theta", "--p", "5", "--p", "7"]) == EXIT_USO

    @pytest.mark.slow
    def test_nu_d25_theta(self, capsys):
        assert main(["nu", "theta", "--n", "25", "--p", "5", "--cap", "2"]) == EXIT_OK
        assert _json(capsys)["results"][0]["nu"] == ">=2"

    def test_filtration_theta_e4(self, capsys):
        assert main(["filtration", "theta*eisenstein:4", "--p", "5", "--m", "1"]) == EXIT_OK
        resultado = _json(capsys)["results"][0]
        assert resultado["peso"] == "1/2"
        assert resultado["testemunha"] is True

    def test_filtration_plain(self, capsys):
        assert main(["filtration", "eisenstein:4", "--p", "5", "--m", "2", "--format", "plain"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "4"

    def test_primo_invalido(self, capsys):
        assert main(["filtration", "theta", "--p", "4"]) == EXIT_USO
        assert _json(capsys)["error"]["tipo"] == "ValidationError"


class TestRomikEScan:
    def test_romik_plain(self, capsys):
        assert main(["romik", "0..5", "--format", "plain"]) == EXIT_OK
        linhas = capsys.readouterr().out.strip().splitlines()
        assert linhas == ["0 1", "1 1", "2 -1", "3 51", "4 849", "5 -26199"]

    def test_romik_json_com_strings(self, capsys):
        main(["romik", "3..4"])
        assert _json(capsys)["results"] == [{"n": 3, "d": "51"}, {"n": 4, "d": "849"}]

    def test_scan(self, capsys):
        assert main(["scan", "--p", "5", "--range", "0..3"]) == EXIT_OK
        resultados = _json(capsys)["results"]
        assert [r["n"] for r in resultados] == [0, 1, 2, 3]
        assert all(r["satisfeito"] for r in resultados)


class TestVerify:
    def test_hasse_cm(self, capsys):
        assert main(["verify", "hasse-cm", "--p", "7", "--range", "0..3"]) == EXIT_OK
        assert len(_json(capsys)["results"]) == 4

    def test_falha_da_verificacao(self, capsys, mocker):
        instancia = mocker.MagicMock()
        instancia.verificar.return_value = pd.DataFrame({"n": [25], "satisfeito": [False]})
        mocker.patch("qmf.cli.verificador", return_value=instancia)
        assert main(["verify", "romik-pm", "--p", "7", "--m", "2"]) == EXIT_FALHA
        assert _json(capsys)["results"] == [{"n": 25, "satisfeito": False}]

    def test_repassa_parametros(self, capsys, mocker):
        instancia = mocker.MagicMock()
        instancia.verificar.return_value = pd.DataFrame({"satisfeito": [True]})
        mocker.patch("qmf.cli.verificador", return_value=instancia)
        main(["verify", "romik-pm", "--p", "7", "--p", "11", "--m", "2", "--range", "25..30"])
        instancia.verificar.assert_called_once_with(p=[7, 11], m=2, intervalo="25..30")

    def test_verificador_desconhecido(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "desconhecido", "--p", "7"])
        assert exc.value.code == 2

    def test_p_1_mod_4(self, capsys):
        assert main(["verify", "romik-pm", "--p", "5", "--m", "1"]) == EXIT_USO

    def test_assercao_interna(self, capsys, mocker):
        mocker.patch("qmf.cli.romik_sequence", side_effect=NonIntegerResult("d(3) = 1/2"))
        assert main(["romik", "0..3"]) == EXIT_INTERNO
        assert _json(capsys)["error"]["tipo"] == "NonIntegerResult"

    def test_precisao_esgotada(self, capsys, mocker):
        mocker.patch("qmf.cli.verificador", side_effect=PrecisionExhausted("divergiu"))
        assert main(["oracle-check", "--n-max", "1"]) == EXIT_FALHA
        assert _json(capsys)["results"] == []

    def test_excecao_inesperada_vira_erro_interno(self, capsys, mocker):
        mocker.patch("qmf.cli.romik_sequence", side_effect=ZeroDivisionError("divisão por zero"))
        assert main(["romik", "0..3"]) == EXIT_INTERNO
        documento = _json(capsys)
        assert documento["error"] == {"tipo": "ZeroDivisionError", "mensagem": "divisão por zero"}
        assert documento["results"] == []

    def test_excecao_inesperada_em_plain(self, capsys, mocker):
        mocker.patch("qmf.cli.congruence_scan", side_effect=KeyError("n"))
        assert main(["scan", "--p", "7", "--format", "plain"]) == EXIT_INTERNO
        assert capsys.readouterr().out.startswith("erro interno:")


class TestRunConfig:
    def test_from_args(self):
        ns = build_parser().parse_args(["nu", "theta", "--p", "5", "--n", "3"])
        config = RunConfig.from_args(ns)
        assert config.command == "nu"
        assert config.p == (5,)
        assert config.n == 3
        assert config.primo_unico() == 5

    def test_inputs_sem_flags_de_saida(self):
        config = RunConfig("scan", p=(5, 7), m=1, formato="plain", timing=False)
        assert config.inputs() == {"p": [5, 7], "m": 1}


class TestInvocacoesDocumentadas:
    """As invocações de exemplo da documentação, executadas como estão."""

    def test_nu_com_form(self, capsys):
        assert main(["nu", "--form", "theta", "--n", "25", "--p", "5"]) == EXIT_OK
        documento = _json(capsys)
        assert documento["inputs"]["forma"] == "theta"
        assert int(documento["results"][0]["nu"].removeprefix(">=")) >= 2

    @pytest.mark.slow
    def test_verify_thm15(self, capsys):
        assert main(["verify", "thm1.5", "--p", "7", "--m", "2", "--range", "25..30"]) == EXIT_OK
        resultados = _json(capsys)["results"]
        assert [r["n"] for r in resultados] == list(range(25, 31))
        assert all(r["satisfeito"] for r in resultados)

    def test_romik_0_3(self, capsys):
        assert main(["romik", "0..3"]) == EXIT_OK
        assert _json(capsys)["results"][0] == {"n": 0, "d": "1"}

    def test_alias_thm15_resolve_para_romik_pm(self, capsys, mocker):
        instancia = mocker.MagicMock()
        instancia.verificar.return_value = pd.DataFrame({"satisfeito": [True]})
        fabrica = mocker.patch("qmf.cli.verificador", return_value=instancia)
        assert main(["verify", "thm1.5", "--p", "7", "--m", "2"]) == EXIT_OK
        assert fabrica.call_args.args[0] == "romik-pm"

    @pytest.mark.parametrize("comando", ["expand", "decompose", "deriv", "nu", "filtration"])
    def test_form_e_posicional_equivalentes(self, comando):
        parser = build_parser()
        extras = {"deriv": ["--n", "1"], "nu": ["--p", "5"], "filtration": ["--p", "5"]}.get(comando, [])
        por_flag = RunConfig.from_args(parser.parse_args([comando, "--form", "theta", *extras]))
        posicional = RunConfig.from_args(parser.parse_args([comando, "theta", *extras]))
        assert por_flag == posicional
        assert por_flag.forma == "theta"

    def test_expand_com_form(self, capsys):
        assert main(["expand", "--form", "theta", "--prec", "10", "--format", "plain"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "1 + 2q + 2q^4 + 2q^9"

    def test_abreviacao_nao_e_aceita(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["expand", "theta", "--no-tim"])
        assert exc.value.code == 2

    def test_sem_forma(self, capsys):
        assert main(["expand", "--prec", "3"]) == EXIT_USO
        assert _json(capsys)["error"]["tipo"] == "ArgumentTypeError"
