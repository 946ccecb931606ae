"""
Validação do censo exato 3x3.

Roda o censo completo com o oráculo independente em 1% dos tabuleiros,
confere as contagens fechadas das classes 1 e 2, grava a verdade de
referência no banco isolado e testa a uniformidade do amostrador por
rejeição contra o censo (χ² da direção inicial).

Uso:
    python tests/validation_census.py
"""

import os
import sys

# Adicionar pasta raiz ao path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.database.connection import init_database
from src.database.operations import get_census, record_census
from src.stats.census import count_short_boards, run_census
from src.stats.estimators import start_direction_test
from src.utils.config import DEFAULT_WORKERS


def main():
    """Validate the exact census."""
    print("=" * 70)
    print("🧮 VALIDAÇÃO - CENSO EXATO 3x3")
    print("=" * 70)

    print(f"\n1️⃣  Rodando censo com oráculo em 1% ({DEFAULT_WORKERS} workers)...")
    result = run_census(3, workers=DEFAULT_WORKERS, oracle_fraction=0.01, seed=0)
    dist = result.distribution
    print(f"   Tempo: {result.elapsed_ms / 1000:.1f}s")
    print(f"   |Sol_3| = {dist.solvable}  E_3 = {dist.mean():.6f}  ML(3) = {result.max_length}")

    print("\n2️⃣  Classes de comprimento 1 e 2...")
    if dist.counts.get(1) == 16777216 and dist.counts.get(2) == 7864320:
        print("   ✅ 8^8 de comprimento 1 e 30·8^6 de comprimento 2")
    else:
        print(f"   ❌ Contagens inesperadas: {dist.counts.get(1)} / {dist.counts.get(2)}")
        sys.exit(1)
    if count_short_boards(3, 1) == dist.counts[1] and count_short_boards(3, 2) == dist.counts[2]:
        print("   ✅ count_short_boards confere")
    else:
        print("   ❌ count_short_boards diverge do censo")
        sys.exit(1)

    print(f"\n3️⃣  Oráculo: {result.oracle_checked} tabuleiros conferidos")
    if result.oracle_mismatches:
        print(f"   ❌ {result.oracle_mismatches} divergências")
        sys.exit(1)
    print("   ✅ Nenhuma divergência")

    print("\n4️⃣  Gravando verdade de referência...")
    init_database()
    success, message = record_census(dist)
    print(f"   {'✅' if success else '❌'} {message}")
    if not success or get_census(3) != dist:
        sys.exit(1)

    print("\n5️⃣  Uniformidade do amostrador (χ² da direção inicial, α=0.001)...")
    expected = result.start_solvable
    statistic, pvalue, observed = start_direction_test(3, 20000, expected, seed=1, workers=DEFAULT_WORKERS)
    print(f"   Observado: { {d.name: c for d, c in observed.items() if c} }")
    print(f"   χ² = {statistic:.3f}  p = {pvalue:.4f}")
    if pvalue < 0.001:
        print("   ❌ Distribuição da direção inicial difere do censo")
        sys.exit(1)
    print("   ✅ Compatível com o censo")

    print("\n" + "=" * 70)
    print("🎉 CENSO VALIDADO")
    print("=" * 70)


if __name__ == "__main__":
    main()
