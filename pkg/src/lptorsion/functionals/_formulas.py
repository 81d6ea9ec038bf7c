from ..utils import P_INF


def _check_positive(**values: float):
    for name, value in values.items():
        if not value > 0:
            raise ValueError(f"{name} must be strictly positive, got {value}.")


def f_p(tp: float, lambda1: float, measure: float, p: float) -> float:
    """
    Scale-invariant product T_p * lambda_1 / |Omega|^(1/p).

    Args:
        tp: T_p of the domain; for p = P_INF the maximum of the torsion function.
        lambda1: First Dirichlet eigenvalue.
        measure: Lebesgue measure of the domain (unused for p = P_INF).
        p: Exponent p >= 1 or P_INF.

    Returns:
        F_p

    """
    _check_positive(tp=tp, lambda1=lambda1, measure=measure)
    if p < 1:
        raise ValueError(f"The exponent p must be at least 1, got {p}.")
    if p == P_INF:
        return tp * lambda1
    return tp * lambda1 / measure ** (1.0 / p)


def measure_exponent(p: float, q: float, m: int) -> float:
    """Exponent of |Omega| that makes T_p * lambda_1^q invariant under homotheties."""
    return (0.0 if p == P_INF else 1.0 / p) + 2.0 * (1.0 - q) / m


def f_pq(
    tp: float, lambda1: float, measure: float, p: float, q: float, m: int
) -> float:
    """
    Two-parameter product T_p * lambda_1^q / |Omega|^(1/p + 2(1 - q)/m).

    For p = P_INF the 1/p term is dropped and tp is the maximum of the torsion
    function.
    With q = 1 this reduces to f_p.

    """
    _check_positive(tp=tp, lambda1=lambda1, measure=measure)
    if p < 1:
        raise ValueError(f"The exponent p must be at least 1, got {p}.")
    if m < 1:
        raise ValueError(f"The dimension must be at least 1, got {m}.")
    return tp * lambda1 ** q / measure ** measure_exponent(p, q, m)
