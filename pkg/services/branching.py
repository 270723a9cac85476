"""Discrete branching spectrum of pi(eps, lambda) restricted to O(p1,q1) x O(p2,q2).

Half-integers are handled as twice their value inside the enumeration loops;
HalfInt objects are only built for the emitted members.
"""

import logging
from typing import List, Optional, Tuple

from models.halfint import HalfInt
from models.schemas import (
    EnumerationBudget,
    RegionKind,
    RepParam,
    Sign,
    SpectralClass,
    SplitSignature,
    Summand,
)
from services.repparams import a_contains, a_minimum_twice, a_plus_contains
from utils.errors import BudgetRequiredError, DegenerateSignatureError, InvalidParameterError

logger = logging.getLogger(__name__)

# Twice the largest spectral parameter accepted without an explicit bound
GUARD_TWICE = 400

KIND_ORDER = (RegionKind.MINUS_PLUS, RegionKind.PLUS_PLUS, RegionKind.PLUS_MINUS)


def _twice_values(p: int, q: int, eps: Sign, max_twice: int) -> List[int]:
    start = a_minimum_twice(p, q, eps)
    if start is None:
        return []
    signature = (p, q) if eps is Sign.PLUS else (q, p)
    if signature == (1, 0):
        return [t for t in (-1, 1) if t <= max_twice]
    return list(range(start, max_twice + 1, 2))


def _contains_twice(p: int, q: int, eps: Sign, twice: int) -> bool:
    return a_contains(p, q, eps, HalfInt(twice))


def _offset(kind: RegionKind, lam: HalfInt, lam1: HalfInt, lam2: HalfInt) -> HalfInt:
    if kind is RegionKind.MINUS_PLUS:
        return lam2 - lam - lam1 - 1
    if kind is RegionKind.PLUS_PLUS:
        return lam - lam1 - lam2 - 1
    return lam1 - lam2 - lam - 1


def _require_joined(split: SplitSignature, lam: HalfInt):
    if not a_plus_contains(split.p, split.q, lam):
        raise InvalidParameterError(
            f"lambda={lam} is not in A_+({split.p},{split.q})",
            hint=_admissible_hint(split.p, split.q),
        )


def _admissible_hint(p: int, q: int) -> str:
    start = a_minimum_twice(p, q, Sign.PLUS)
    if start is None:
        return f"A_+({p},{q}) is empty"
    if (p, q) == (1, 0):
        return "A_+(1,0) = {-1/2, 1/2}"
    first = ", ".join(str(HalfInt(t)) for t in range(start, start + 6, 2))
    return f"A_+({p},{q}) = {{{first}, ...}}"


def lambda_set_contains(
    kind: RegionKind, split: SplitSignature, lam: HalfInt, l1: HalfInt, l2: HalfInt
) -> bool:
    """
    Membership of (l1, l2) in Lambda_kind(lam)

    Args:
        kind: Sign pair (delta, eps)
        split: Subgroup signature
        lam: Parameter of the restricted representation, in A_+(p,q)
        l1: Parameter on the first factor
        l2: Parameter on the second factor

    Returns:
        True if l1 in A_delta(p1,q1), l2 in A_eps(p2,q2) and the offset lies in 2N
    """
    kind = RegionKind(kind)
    lam, l1, l2 = HalfInt.of(lam), HalfInt.of(l1), HalfInt.of(l2)
    _require_joined(split, lam)
    return (
        a_contains(split.p1, split.q1, kind.delta, l1)
        and a_contains(split.p2, split.q2, kind.eps, l2)
        and _offset(kind, lam, l1, l2).in_two_n()
    )


def _enumerate_twice(kind: RegionKind, split: SplitSignature, lam_twice: int, bound: int) -> List[Tuple[int, int]]:
    p1, q1, p2, q2 = split.as_tuple()
    pairs = []

    if kind is RegionKind.PLUS_PLUS:
        floor1 = a_minimum_twice(p1, q1, Sign.PLUS)
        if floor1 is None:
            return []
        for t2 in _twice_values(p2, q2, Sign.PLUS, lam_twice):
            t1 = lam_twice - 2 - t2
            while t1 >= floor1:
                if t1 + t2 <= bound and _contains_twice(p1, q1, Sign.PLUS, t1):
                    pairs.append((t1, t2))
                t1 -= 4

    elif kind is RegionKind.PLUS_MINUS:
        if a_minimum_twice(p1, q1, Sign.PLUS) is None:
            return []
        for t2 in _twice_values(p2, q2, Sign.MINUS, bound + 1):
            t1 = t2 + lam_twice + 2
            while t1 + t2 <= bound:
                if _contains_twice(p1, q1, Sign.PLUS, t1):
                    pairs.append((t1, t2))
                t1 += 4

    else:
        if a_minimum_twice(p2, q2, Sign.PLUS) is None:
            return []
        for t1 in _twice_values(p1, q1, Sign.MINUS, bound + 1):
            t2 = t1 + lam_twice + 2
            while t1 + t2 <= bound:
                if _contains_twice(p2, q2, Sign.PLUS, t2):
                    pairs.append((t1, t2))
                t2 += 4

    pairs.sort(key=lambda pair: (pair[0] + pair[1], pair[1]))
    return pairs


def lambda_set_enumerate(
    kind: RegionKind,
    split: SplitSignature,
    lam: HalfInt,
    budget: Optional[EnumerationBudget] = None,
) -> List[Tuple[HalfInt, HalfInt]]:
    """
    Members of Lambda_kind(lam) ordered by lambda1 + lambda2, then lambda2

    The -+ and +- sets may be infinite, so they need a budget. Without
    total_max (or with one above 200) lambda1 + lambda2 is capped at 200, and a
    warning is logged when the cap rather than max_count ends the list.
    """
    kind = RegionKind(kind)
    lam = HalfInt.of(lam)
    _require_joined(split, lam)

    if budget is None and kind is not RegionKind.PLUS_PLUS:
        raise BudgetRequiredError(
            f"Enumerating Lambda_{kind.value} needs a budget",
            hint="pass max_count (and optionally total_max)",
        )

    bound = GUARD_TWICE
    if budget is not None and budget.total_max is not None:
        bound = min(budget.total_max.twice_value, GUARD_TWICE)
    capped = budget is None or budget.total_max is None or budget.total_max.twice_value > GUARD_TWICE

    pairs = _enumerate_twice(kind, split, lam.twice_value, bound)
    if budget is not None:
        if capped and kind is not RegionKind.PLUS_PLUS and 0 < len(pairs) < budget.max_count:
            logger.warning(
                f"Lambda_{kind.value}({lam}) for split {split.as_tuple()} stopped at "
                f"lambda1 + lambda2 <= {HalfInt(GUARD_TWICE)} with {len(pairs)} of "
                f"max_count={budget.max_count} members"
            )
        pairs = pairs[: budget.max_count]

    logger.debug(f"Lambda_{kind.value}({lam}) for split {split.as_tuple()}: {len(pairs)} members")
    return [(HalfInt(t1), HalfInt(t2)) for t1, t2 in pairs]


def lambda_set_infinite(kind: RegionKind, split: SplitSignature) -> bool:
    """Whether Lambda_kind(lam) is infinite (equivalently non-empty) for the -+ and +- kinds"""
    kind = RegionKind(kind)
    if kind is RegionKind.PLUS_MINUS:
        return split.p2 == 0 or (split.p1 >= 2 and split.q2 >= 2)
    if kind is RegionKind.MINUS_PLUS:
        return split.p1 == 0 or (split.p2 >= 2 and split.q1 >= 2)
    return False


def lambda_union_infinite(split: SplitSignature) -> bool:
    _require_basic(split)
    return (
        split.p1 * split.p2 == 0
        or min(split.p2, split.q1) >= 2
        or min(split.p1, split.q2) >= 2
    )


def _require_split_matches(rep: RepParam, split: SplitSignature):
    if (split.p, split.q) != (rep.p, rep.q):
        raise InvalidParameterError(
            f"Split {split.as_tuple()} does not decompose (p,q)=({rep.p},{rep.q})"
        )


def branch_discrete(
    rep: RepParam, split: SplitSignature, budget: Optional[EnumerationBudget] = None
) -> List[Summand]:
    """
    Discrete part of the restriction as a multiplicity-free list of summands

    Args:
        rep: Representation being restricted
        split: Subgroup signature with p1+p2=p and q1+q2=q
        budget: Required whenever a -+ or +- set is infinite

    Returns:
        Summands in kind order -+, ++, +-; for eps=- the signs are flipped
    """
    _require_split_matches(rep, split)

    flipped = rep.eps is Sign.MINUS
    work_rep = rep.normalized()
    work_split = split.swapped() if flipped else split

    summands = []
    for kind in KIND_ORDER:
        if kind is not RegionKind.PLUS_PLUS and budget is None:
            if lambda_set_infinite(kind, work_split):
                raise BudgetRequiredError(
                    f"Lambda_{kind.value} is infinite for split {work_split.as_tuple()}",
                    hint="pass --max-count",
                )
            continue

        for lam1, lam2 in lambda_set_enumerate(kind, work_split, work_rep.lam, budget):
            delta, eps = kind.delta, kind.eps
            if flipped:
                delta, eps = delta.flip(), eps.flip()
            summands.append(Summand(delta=delta, eps=eps, lambda1=lam1, lambda2=lam2))

    logger.info(
        f"Restriction of pi({rep.p},{rep.q},{rep.eps.value},{rep.lam}) to split "
        f"{split.as_tuple()}: {len(summands)} discrete summands"
    )
    return summands


def parity_holds(rep: RepParam, summand: Summand) -> bool:
    """delta*lambda1 + eps*lambda2 - eps_rep*lambda is an odd integer"""
    value = (
        summand.lambda1 * summand.delta.factor
        + summand.lambda2 * summand.eps.factor
        - rep.lam * rep.eps.factor
    )
    return value.is_integer and value.as_int() % 2 == 1


def multiplicity(rep: RepParam, split: SplitSignature, candidate: Summand) -> int:
    """1 if the candidate occurs in the discrete part, 0 otherwise"""
    _require_split_matches(rep, split)
    delta, eps = candidate.delta, candidate.eps
    work_split = split
    if rep.eps is Sign.MINUS:
        delta, eps, work_split = delta.flip(), eps.flip(), split.swapped()

    try:
        kind = RegionKind.from_signs(delta, eps)
    except ValueError:
        return 0
    if not parity_holds(rep, candidate):
        return 0
    return int(lambda_set_contains(kind, work_split, rep.lam, candidate.lambda1, candidate.lambda2))


def _require_basic(split: SplitSignature):
    if split.p < 2 or split.q < 1:
        raise DegenerateSignatureError(
            f"Split {split.as_tuple()} joins to ({split.p},{split.q}); need p >= 2 and q >= 1"
        )


def classify_split(split: SplitSignature) -> SpectralClass:
    _require_basic(split)
    p1, q1, p2, q2 = split.as_tuple()
    purely_continuous = (p1, p2) == (1, 1) or (p1, q1) == (1, 1) or (p2, q2) == (1, 1)
    finite_discrete = p1 * p2 > 0 and min(p2, q1) <= 1 and min(p1, q2) <= 1
    discretely_decomposable = p1 == 0 or p2 == 0
    return SpectralClass(
        discretely_decomposable=discretely_decomposable,
        finite_discrete=finite_discrete,
        purely_continuous=purely_continuous,
    )


def discrete_series_exists(p: int, q: int) -> bool:
    """O(p,q) on X(p,q) has a discrete series for one of the two signs"""
    return a_minimum_twice(p, q, Sign.PLUS) is not None or a_minimum_twice(p, q, Sign.MINUS) is not None


def sgn_index(rep: RepParam, split: SplitSignature, summand: Summand) -> Optional[int]:
    """
    Exponent n of the character sgn^n when one factor is O(1)

    Returns:
        n recovered from the offset of the other parameter, or None when no
        factor has signature (1,0) or (0,1)
    """
    if rep.eps is not Sign.PLUS:
        return None
    half = HalfInt(1)
    signs = summand.signs
    if (split.p2, split.q2) == (0, 1) and signs == "+-":
        return (summand.lambda1 - rep.lam - half).as_int()
    if (split.p2, split.q2) == (1, 0) and signs == "++":
        return (rep.lam - summand.lambda1 - half).as_int()
    if (split.p1, split.q1) == (0, 1) and signs == "-+":
        return (summand.lambda2 - rep.lam - half).as_int()
    if (split.p1, split.q1) == (1, 0) and signs == "++":
        return (rep.lam - summand.lambda2 - half).as_int()
    return None
