"""
Testes dos estimadores Monte Carlo e da amostragem por rejeição.
"""

import sys
from pathlib import Path

import pytest

# Adicionar raiz do projeto ao path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.core.directions import Direction
from src.core.exceptions import BoardParameterError, SamplingBudgetError
from src.solver.bfs import solve
from src.stats.bounds import solvable_probability_lower_bound
from src.stats.estimators import (
    LengthDistribution,
    bernoulli_estimate,
    estimate_expected_length,
    estimate_solvable_probability,
    sample_solvable,
    sample_solvable_board,
    wilson_interval,
    z_score,
)


class TestLengthDistribution:
    """Testes da distribuição de comprimentos."""

    def test_agregados(self):
        """Total, média e variância por contagens."""
        dist = LengthDistribution(3, {1: 2, 3: 2}, unsolvable=6)
        assert dist.solvable == 4
        assert dist.total == 10
        assert dist.mean() == 2.0
        assert dist.variance() == pytest.approx(4 / 3)
        assert dist.max_length == 3
        assert dist.tail_fraction(2) == 0.5

    def test_fusao(self):
        """merged soma contagens por classe."""
        a = LengthDistribution(5, {1: 1, 2: 3}, 4)
        b = LengthDistribution(5, {2: 1, 7: 2}, 1)
        merged = a.merged(b)
        assert merged.counts == {1: 1, 2: 4, 7: 2}
        assert merged.unsolvable == 5

    def test_comprimento_invalido(self):
        """Comprimento acima de n²-1 é rejeitado."""
        with pytest.raises(BoardParameterError):
            LengthDistribution(3, {9: 1})

    def test_tabela(self):
        """A linha 0 é a dos insolúveis."""
        frame = LengthDistribution(3, {1: 1, 2: 1}, 2).to_frame()
        assert frame["length"].tolist() == [0, 1, 2]
        assert frame["fraction"].sum() == pytest.approx(1.0)
        assert LengthDistribution(3, {1: 1}, 1).to_csv().splitlines()[0] == "length,count,fraction"


class TestIntervals:
    """Testes dos intervalos de confiança."""

    def test_normal(self):
        """p ± 1,96·erro padrão."""
        p, stderr, (low, high) = bernoulli_estimate(30, 100)
        assert p == 0.3
        assert high - p == pytest.approx(p - low)
        assert stderr == pytest.approx((0.3 * 0.7 / 100) ** 0.5)
        assert high - p == pytest.approx(1.959964 * stderr, rel=1e-5)

    def test_quantil_pelo_nivel(self):
        """O quantil vem da normal: 95% ≈ 1,96 e 99% ≈ 2,576."""
        assert z_score(0.95) == pytest.approx(1.959964, rel=1e-6)
        assert z_score(0.99) == pytest.approx(2.575829, rel=1e-6)
        narrow = bernoulli_estimate(30, 100, confidence=0.90)[2]
        wide = bernoulli_estimate(30, 100, confidence=0.99)[2]
        assert wide[1] - wide[0] > narrow[1] - narrow[0]

    def test_nivel_invalido(self):
        """Nível fora de (0, 1) é rejeitado."""
        with pytest.raises(BoardParameterError):
            z_score(1.0)

    def test_wilson_dentro_de_zero_um(self):
        """Wilson nunca sai de [0, 1]."""
        low, high = wilson_interval(0, 50)
        assert low == pytest.approx(0.0, abs=1e-12)
        assert 0 < high < 1


class TestSolvableProbability:
    """Testes do estimador de P(solúvel)."""

    def test_dentro_das_cotas(self):
        """n=3: estimativa entre a cota inferior e 3/8 (4σ)."""
        report = estimate_solvable_probability(3, 4000, seed=5)
        margin = 4 * report.stderr
        assert float(solvable_probability_lower_bound(3)) - margin <= report.estimate <= 0.375 + margin
        assert report.solvable_samples == round(report.estimate * 4000)

    def test_determinismo_entre_workers(self):
        """Mesmo relatório com 1 e 2 processos."""
        serial = estimate_solvable_probability(5, 2500, seed=3, workers=1)
        parallel = estimate_solvable_probability(5, 2500, seed=3, workers=2)
        assert serial.to_dict(timing=False) == parallel.to_dict(timing=False)

    def test_wilson(self):
        """A opção Wilson troca só o intervalo."""
        plain = estimate_solvable_probability(3, 500, seed=1)
        wilson = estimate_solvable_probability(3, 500, seed=1, wilson=True)
        assert plain.estimate == wilson.estimate
        assert plain.ci95 != wilson.ci95

    def test_amostras_invalidas(self):
        """samples < 1 é rejeitado."""
        with pytest.raises(BoardParameterError):
            estimate_solvable_probability(3, 0)


class TestRejectionSampling:
    """Testes da amostragem uniforme em Sol_n."""

    def test_amostra_solucionavel(self):
        """Toda amostra é solúvel e começa em E, SE ou S."""
        for seed in range(30):
            board = sample_solvable_board(5, seed)
            assert solve(board).solvable
            assert board.cell((1, 1)) in (Direction.E, Direction.SE, Direction.S)

    def test_comprimento_informado(self):
        """O comprimento da amostra é o da BFS."""
        sample = sample_solvable(7, 11)
        assert sample.length == solve(sample.board).length
        assert sample.rejections == sample.attempts - 1

    def test_orcamento(self):
        """Orçamento esgotado levanta SamplingBudgetError."""
        failures = 0
        for seed in range(20):
            try:
                sample_solvable(3, seed, max_attempts=1)
            except SamplingBudgetError:
                failures += 1
        assert failures > 0


class TestExpectedLength:
    """Testes do estimador de E_n."""

    def test_faixa_plausivel(self):
        """n=5: média entre 1 e n²-1, com a classe 1 dominante."""
        report, dist = estimate_expected_length(5, 1500, seed=2)
        assert dist.solvable == 1500
        assert 1.0 <= report.estimate <= 24.0
        assert dist.fraction(1) >= 1 / 3 - 4 * (0.25 / 1500) ** 0.5
        assert report.samples >= 1500
        assert 0 < report.acceptance_rate <= 1

    def test_determinismo_entre_workers(self):
        """Sementes por amostra: mesmo histograma com 1 e 2 processos."""
        serial, _ = estimate_expected_length(5, 2100, seed=9, workers=1)
        parallel, _ = estimate_expected_length(5, 2100, seed=9, workers=2)
        assert serial.histogram == parallel.histogram
        assert serial.samples == parallel.samples
