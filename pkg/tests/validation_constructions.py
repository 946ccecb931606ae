"""
Validação das espirais (plana e toroidal) de comprimento 2n-1.

Uso:
    python tests/validation_constructions.py
"""

import os
import sys

# Adicionar pasta raiz ao path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.core.exceptions import ConstructionFailedError
from src.extensions.torus import solve_torus, torus_spiral
from src.search.constructions import spiral_board
from src.solver.bfs import solve


def main():
    """Validate the spiral constructions."""
    print("=" * 70)
    print("🌀 VALIDAÇÃO - ESPIRAIS DE COMPRIMENTO 2n-1")
    print("=" * 70)
    failures = 0

    print("\n1️⃣  Espiral plana, n = 5..31...")
    for n in range(5, 32, 2):
        try:
            length = solve(spiral_board(n)).length
        except ConstructionFailedError as e:
            print(f"   ❌ n={n}: {e}")
            failures += 1
            continue
        status = "✅" if length == 2 * n - 1 else "❌"
        print(f"   {status} n={n:2d}: comprimento {length}")
        failures += length != 2 * n - 1

    print("\n2️⃣  Espiral toroidal, n = 3..31...")
    for n in range(3, 32, 2):
        try:
            length = solve_torus(torus_spiral(n)).length
        except ConstructionFailedError as e:
            print(f"   ❌ n={n}: {e}")
            failures += 1
            continue
        status = "✅" if length == 2 * n - 1 else "❌"
        print(f"   {status} n={n:2d}: comprimento {length}")
        failures += length != 2 * n - 1

    print("\n" + "=" * 70)
    if failures:
        print(f"❌ {failures} VERIFICAÇÕES FALHARAM")
        print("=" * 70)
        sys.exit(1)
    print("🎉 ESPIRAIS VALIDADAS")
    print("=" * 70)


if __name__ == "__main__":
    main()
