"""
Validação dos estimadores Monte Carlo contra as cotas exatas.

- n=3: P(solúvel) e E_3 batem com o censo dentro de 4σ.
- n=101, 10^5 amostras: estimativa dentro de [cota inferior - 3σ, 3/8 + 3σ].
- n=201, 2·10^4 solúveis: |E_n - 209/96| <= 0.1.
- Frequências das classes de comprimento respeitam as quatro cotas (4σ).

Uso:
    python tests/validation_estimators.py [--stretch]
"""

import math
import os
import sys

# Adicionar pasta raiz ao path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.stats.bounds import LIMIT_EXPECTED_LENGTH, length_class_bounds, solvable_probability_lower_bound
from src.stats.census import cached_census
from src.stats.estimators import estimate_expected_length, estimate_solvable_probability
from src.utils.config import DEFAULT_WORKERS

SEED = 7


def _class_bounds_ok(dist, n: int) -> bool:
    """Confere as quatro cotas das classes com folga de 4σ."""
    bounds = length_class_bounds(n)
    m = dist.solvable
    ok = True
    checks = (
        ("classe 1 >=", dist.fraction(1), float(bounds.length_one), 1),
        ("classe 2 >=", dist.fraction(2), float(bounds.length_two), 1),
        ("classe 3 >=", dist.fraction(3), float(bounds.length_three), 1),
        ("cauda   <=", dist.tail_fraction(4), float(bounds.tail), -1),
    )
    for label, value, bound, sign in checks:
        sigma = math.sqrt(max(value * (1 - value), 1e-12) / m)
        passed = sign * (value - bound) >= -4 * sigma
        ok = ok and passed
        print(f"   {'✅' if passed else '❌'} {label} {bound:.5f}: {value:.5f} (σ={sigma:.5f})")
    return ok


def main():
    """Validate the Monte Carlo estimators."""
    stretch = "--stretch" in sys.argv
    print("=" * 70)
    print("🎲 VALIDAÇÃO - ESTIMADORES MONTE CARLO")
    print("=" * 70)
    failures = 0

    print("\n1️⃣  n=3 contra o censo...")
    truth = cached_census().distribution
    p_true = truth.solvable / truth.total
    report = estimate_solvable_probability(3, 10**6, SEED, DEFAULT_WORKERS)
    gap = abs(report.estimate - p_true)
    print(f"   P(solúvel): censo {p_true:.6f}, estimativa {report.estimate:.6f} ± {report.stderr:.6f}")
    if gap > 4 * report.stderr:
        print("   ❌ Fora de 4σ")
        failures += 1
    length_report, _ = estimate_expected_length(3, 20000, SEED, DEFAULT_WORKERS)
    gap = abs(length_report.estimate - truth.mean())
    print(f"   E_3: censo {truth.mean():.6f}, estimativa {length_report.estimate:.6f} ± {length_report.stderr:.6f}")
    if gap > 4 * length_report.stderr:
        print("   ❌ Fora de 4σ")
        failures += 1
    acceptance = length_report.acceptance_rate
    sigma = math.sqrt(p_true * (1 - p_true) / length_report.samples)
    print(f"   Aceitação do amostrador: {acceptance:.6f} (censo {p_true:.6f})")
    if abs(acceptance - p_true) > 4 * sigma:
        print("   ❌ Taxa de aceitação fora de 4σ")
        failures += 1

    print("\n2️⃣  n=101, 10^5 amostras...")
    report = estimate_solvable_probability(101, 10**5, SEED, DEFAULT_WORKERS)
    low = float(solvable_probability_lower_bound(101)) - 3 * report.stderr
    high = 0.375 + 3 * report.stderr
    print(f"   Estimativa {report.estimate:.5f}, envelope [{low:.5f}, {high:.5f}]")
    if not low <= report.estimate <= high:
        print("   ❌ Fora do envelope")
        failures += 1
    else:
        print("   ✅ Dentro do envelope")

    sizes = [(201, 20000, 0.1)]
    if stretch:
        sizes.append((501, 20000, 0.03))
    for step, (n, samples, tolerance) in enumerate(sizes, start=3):
        print(f"\n{step}️⃣  E_n em n={n} com {samples} solúveis...")
        length_report, dist = estimate_expected_length(n, samples, SEED, DEFAULT_WORKERS, progress=True)
        gap = abs(length_report.estimate - float(LIMIT_EXPECTED_LENGTH))
        print(f"   E_{n} ≈ {length_report.estimate:.5f} (209/96 ≈ {float(LIMIT_EXPECTED_LENGTH):.5f}, gap {gap:.4f})")
        if gap > tolerance:
            print(f"   ❌ Gap acima de {tolerance}")
            failures += 1
        if not _class_bounds_ok(dist, n):
            failures += 1

    print("\n" + "=" * 70)
    if failures:
        print(f"❌ {failures} VERIFICAÇÕES FALHARAM")
        print("=" * 70)
        sys.exit(1)
    print("🎉 ESTIMADORES VALIDADOS")
    print("=" * 70)


if __name__ == "__main__":
    main()
