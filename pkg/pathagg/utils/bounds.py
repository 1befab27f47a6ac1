"""
Limites do número de iterações e de trocas de cor.

As comparações usam potências racionais exatas de 4/3; o valor real
2·log_{4/3} k só aparece em resumos, com três casas decimais.
"""
import math
from fractions import Fraction

FOUR_THIRDS = Fraction(4, 3)


def floor_log43(k: int) -> int:
    """Maior t com (4/3)^t <= k."""
    if k < 1:
        raise ValueError(f"k deve ser positivo, recebido {k}")
    t = 0
    power = FOUR_THIRDS
    while power <= k:
        t += 1
        power *= FOUR_THIRDS
    return t


def safe_iteration_bound(k: int) -> int:
    """floor(log_{4/3} k) + 1 iterações; zero terminais não iteram."""
    return 0 if k == 0 else floor_log43(k) + 1


def safe_switch_bound(k: int) -> int:
    return 2 * safe_iteration_bound(k)


def paper_switch_bound(k: int) -> float:
    """2·log_{4/3} k como número real (somente para relatórios)."""
    if k <= 1:
        return 0.0
    return 2 * math.log(k) / math.log(4 / 3)


def exceeds_paper_bound(cost: int, k: int) -> bool:
    """cost > 2·log_{4/3} k, decidido por (4/3)^cost > k^2."""
    if k == 0:
        return cost > 0
    return FOUR_THIRDS ** cost > k * k


def ceil_log2(n: int) -> int:
    return 0 if n <= 1 else (n - 1).bit_length()


def floor_log2_half(n: int) -> int:
    """floor(log2(n/2)) para n >= 2."""
    if n < 2:
        raise ValueError(f"n deve ser ao menos 2, recebido {n}")
    return n.bit_length() - 2
