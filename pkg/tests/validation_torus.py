"""
Validação da cota 4n no toro e do rastreamento de linhas.

Uso:
    python tests/validation_torus.py
"""

import os
import sys

# Adicionar pasta raiz ao path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.extensions.torus import line_trace, random_torus, solve_torus, torus_bound_check
from src.utils.config import DEFAULT_WORKERS

SAMPLES = 10**4


def main():
    """Validate the torus upper bound."""
    print("=" * 70)
    print("🍩 VALIDAÇÃO - COTA 4n NO TORO")
    print("=" * 70)
    failures = 0

    print(f"\n1️⃣  {SAMPLES} tabuleiros por tamanho...")
    for n in (5, 15, 25):
        report = torus_bound_check(n, SAMPLES, seed=n, workers=DEFAULT_WORKERS)
        status = "✅" if report.violations == 0 else "❌"
        print(
            f"   {status} n={n}: {report.solvable}/{report.samples} solúveis,"
            f" máximo {report.max_length} (cota {report.bound})"
        )
        failures += report.violations > 0

    print("\n2️⃣  Rastreamento de linhas nas testemunhas da BFS...")
    revisits = 0
    traced = 0
    for seed in range(2000):
        tb = random_torus(15, seed)
        result = solve_torus(tb)
        if not result.solvable:
            continue
        traced += 1
        if not line_trace(tb, result.witness).ok:
            revisits += 1
    status = "✅" if revisits == 0 else "❌"
    print(f"   {status} {traced} jogos rastreados, {revisits} com revisita de linha")
    failures += revisits

    print("\n" + "=" * 70)
    if failures:
        print(f"❌ {failures} VERIFICAÇÕES FALHARAM")
        print("=" * 70)
        sys.exit(1)
    print("🎉 TORO VALIDADO")
    print("=" * 70)


if __name__ == "__main__":
    main()
