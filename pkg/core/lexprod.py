"""
Lexicographic Powers for hahnlog
Elements of Z^N with finite support under the lexicographic order, the
operation d (+) S, and the convexity refuter: given an order preserving
embedding of a cofinal subset of N into Z^N, it runs the inductive
construction that shows the image is not convex and returns a checkable
witness.
"""

from dataclasses import dataclass, field
from itertools import islice
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from config.settings import REFUTER_CONFIG
from core.errors import DomainExhausted, InvariantViolation, OracleInconsistent, UsageError
from core.ordgroup import Order
from utils.logger import log_debug, log_info


# ============================================================================
# SUPPORT MAPS
# ============================================================================

@dataclass(frozen=True)
class SupportMap:
    """
    A map N -> Z with finite support. Absent indices carry the
    distinguished element 0; stored entries are nonzero and sorted by index.
    """

    entries: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        cleaned: Dict[int, int] = {}
        for index, value in self.entries:
            if int(index) != index or index < 0:
                raise UsageError(f"support index must be a natural number, got {index}")
            if index in cleaned:
                raise UsageError(f"duplicate support index {index}")
            cleaned[int(index)] = int(value)
        object.__setattr__(
            self, "entries", tuple(sorted((i, v) for i, v in cleaned.items() if v != 0))
        )

    @classmethod
    def of(cls, mapping: Optional[Mapping[int, int]] = None) -> "SupportMap":
        return cls(tuple((mapping or {}).items()))

    def get(self, index: int) -> int:
        for i, v in self.entries:
            if i == index:
                return v
        return 0

    def as_dict(self) -> Dict[int, int]:
        return dict(self.entries)

    @property
    def support(self) -> FrozenSet[int]:
        return frozenset(i for i, _ in self.entries)

    def __lt__(self, other: "SupportMap") -> bool:
        return lex_cmp(self, other) is Order.LESS

    def __le__(self, other: "SupportMap") -> bool:
        return lex_cmp(self, other) is not Order.GREATER

    def __gt__(self, other: "SupportMap") -> bool:
        return lex_cmp(self, other) is Order.GREATER

    def __ge__(self, other: "SupportMap") -> bool:
        return lex_cmp(self, other) is not Order.LESS

    def __add__(self, other: "SupportMap") -> "SupportMap":
        return hahn_add(self, other)

    def __neg__(self) -> "SupportMap":
        return hahn_neg(self)

    def __str__(self) -> str:
        return "{" + ", ".join(f"{i}:{v}" for i, v in self.entries) + "}"


IndexSet = FrozenSet[int]


def index_set(indices: Iterable[int]) -> IndexSet:
    """Validate and freeze a finite set of natural numbers."""
    result = frozenset(int(i) for i in indices)
    if any(i < 0 for i in result):
        raise UsageError("index sets contain natural numbers only")
    return result


def least_difference(a: SupportMap, b: SupportMap) -> Optional[int]:
    """The least index where a and b differ, or None when a == b."""
    da, db = a.as_dict(), b.as_dict()
    differing = [i for i in da.keys() | db.keys() if da.get(i, 0) != db.get(i, 0)]
    return min(differing) if differing else None


def lex_cmp(a: SupportMap, b: SupportMap) -> Order:
    """Compare the values at the least differing index (absent = 0)."""
    gamma0 = least_difference(a, b)
    if gamma0 is None:
        return Order.EQUAL
    return Order.of(a.get(gamma0) - b.get(gamma0))


def oplus(d: SupportMap, s: Iterable[int]) -> SupportMap:
    """
    d (+) S: apply the successor tau(x) = x + 1 at every index of S.

    Args:
        d: Element of the lexicographic power
        s: Finite index set S

    Returns:
        The modified element; its support lies in supp(d) | S
    """
    values = d.as_dict()
    for i in index_set(s):
        values[i] = values.get(i, 0) + 1
    return SupportMap.of(values)


def hahn_add(a: SupportMap, b: SupportMap) -> SupportMap:
    """Componentwise sum in the Hahn product Z^N."""
    values = a.as_dict()
    for i, v in b.entries:
        values[i] = values.get(i, 0) + v
    return SupportMap.of(values)


def hahn_neg(a: SupportMap) -> SupportMap:
    return SupportMap(tuple((i, -v) for i, v in a.entries))


# ============================================================================
# EMBEDDING ORACLES AND WITNESSES
# ============================================================================

@dataclass
class EmbeddingOracle:
    """
    An order preserving embedding of a cofinal subset of N into Z^N.

    ``forward`` maps an enumerated index to its image, ``inverse`` returns
    the preimage of a SupportMap or None when it is not in the image, and
    ``domain`` returns a fresh increasing enumeration of the subset.
    """

    name: str
    forward: Callable[[int], SupportMap]
    inverse: Callable[[SupportMap], Optional[int]]
    domain: Callable[[], Iterator[int]]


@dataclass(frozen=True)
class RefutationStep:
    """One inverse query of the construction."""

    iteration: int
    row: int
    nu: int
    lower_pre: int
    upper_pre: int
    beta: int
    indices: Tuple[int, ...]
    middle: SupportMap
    answer: Optional[int]


@dataclass(frozen=True)
class NotConvex:
    """lower < middle < upper with lower, upper in the image and middle not."""

    lower: SupportMap
    middle: SupportMap
    upper: SupportMap
    lower_pre: int
    upper_pre: int
    iterations: int
    trace: Tuple[RefutationStep, ...] = ()


@dataclass(frozen=True)
class ChainExhausted:
    """Strictly increasing chain built when every query landed in the image."""

    chain: Tuple[SupportMap, ...]
    steps: int
    trace: Tuple[RefutationStep, ...] = ()


Witness = Union[NotConvex, ChainExhausted]


@dataclass
class _Row:
    """Row n of the construction: gamma_0^(n), alpha^(n), beta^(n) and the chain."""

    start: int
    start_image: SupportMap
    alpha: Optional[int] = None
    alpha_image: Optional[SupportMap] = None
    beta: Optional[int] = None
    chain: List[int] = field(default_factory=list)
    middles: List[SupportMap] = field(default_factory=list)


class _Refuter:
    """State of one run of :func:`refute_convexity`."""

    def __init__(self, oracle: EmbeddingOracle, max_domain_scan: int):
        self.oracle = oracle
        self.max_domain_scan = max_domain_scan
        self.rows: List[_Row] = []
        self.trace: List[RefutationStep] = []

    # ---------------------------------------------------------------- domain

    def _first_above(self, bound: Optional[int]) -> int:
        """Least enumerated element strictly above ``bound`` (any if None)."""
        for x in islice(self.oracle.domain(), self.max_domain_scan):
            if bound is None or x > bound:
                return x
        raise DomainExhausted(
            f"oracle '{self.oracle.name}' enumerates no element above {bound} "
            f"within {self.max_domain_scan} elements"
        )

    def _image(self, x: int) -> SupportMap:
        image = self.oracle.forward(x)
        back = self.oracle.inverse(image)
        if back != x:
            raise OracleInconsistent(
                f"inverse(forward({x})) = {back}, expected {x}"
            )
        return image

    # ------------------------------------------------------------------ rows

    def _new_row(self, start: int) -> _Row:
        row = _Row(start=start, start_image=self._image(start))
        row.chain.append(start)
        self.rows.append(row)
        return row

    def _open_row(self, row: _Row) -> None:
        """Choose alpha^(n) and beta^(n), then start row n+1 above beta^(n)."""
        row.alpha = self._first_above(row.start)
        row.alpha_image = self._image(row.alpha)
        if lex_cmp(row.start_image, row.alpha_image) is not Order.LESS:
            raise OracleInconsistent(
                f"forward is not increasing: forward({row.start}) = {row.start_image} "
                f"is not below forward({row.alpha}) = {row.alpha_image}"
            )
        row.beta = least_difference(row.start_image, row.alpha_image)
        self._new_row(self._first_above(row.beta))

    def _extend(self, iteration: int, n: int) -> Optional[NotConvex]:
        """Add gamma_nu^(n) for nu = iteration - n + 1 to row n (1-based n)."""
        row, below = self.rows[n - 1], self.rows[n]
        nu = iteration - n + 1
        indices = tuple(below.chain[:nu])
        middle = oplus(row.start_image, indices)

        # Row chains grow strictly and stay between the row bounds.
        if min(indices) <= row.beta:
            raise InvariantViolation(f"min S = {min(indices)} is not above beta = {row.beta}")
        if row.middles and lex_cmp(row.middles[-1], middle) is not Order.LESS:
            raise InvariantViolation(f"chain of row {n} is not increasing at {middle}")
        if not (lex_cmp(row.start_image, middle) is Order.LESS
                and lex_cmp(middle, row.alpha_image) is Order.LESS):
            raise InvariantViolation(
                f"{middle} is not strictly between {row.start_image} and {row.alpha_image}"
            )

        answer = self.oracle.inverse(middle)
        self.trace.append(RefutationStep(
            iteration=iteration, row=n, nu=nu, lower_pre=row.start,
            upper_pre=row.alpha, beta=row.beta, indices=indices,
            middle=middle, answer=answer,
        ))
        log_debug(f"refuter: iteration {iteration} row {n} nu {nu} S={set(indices)} -> {answer}")

        if answer is None:
            return NotConvex(
                lower=row.start_image, middle=middle, upper=row.alpha_image,
                lower_pre=row.start, upper_pre=row.alpha,
                iterations=iteration, trace=tuple(self.trace),
            )
        if answer <= row.chain[-1]:
            raise OracleInconsistent(
                f"claimed preimage {answer} of {middle} does not exceed {row.chain[-1]}"
            )
        row.chain.append(answer)
        row.middles.append(middle)
        return None

    def run(self, max_steps: int) -> Witness:
        self._new_row(self._first_above(None))
        for iteration in range(1, max_steps + 1):
            self._open_row(self.rows[iteration - 1])
            for n in range(iteration, 0, -1):
                witness = self._extend(iteration, n)
                if witness is not None:
                    return witness
        return ChainExhausted(
            chain=tuple(self.rows[0].middles), steps=max_steps, trace=tuple(self.trace)
        )


def refute_convexity(
    oracle: EmbeddingOracle,
    max_steps: int,
    max_domain_scan: Optional[int] = None
) -> Witness:
    """
    Run the construction against ``oracle``.

    Iteration k opens row k (alpha^(k), beta^(k) and gamma_0^(k+1)) and
    extends rows k, k-1, ..., 1 by one element each, querying
    inverse(i(gamma_0^(n)) (+) {gamma_nu^(n+1) : nu <= k-n}). The first
    query answered "not in image" gives a NotConvex witness.

    Args:
        oracle: Embedding under test
        max_steps: Number of iterations before giving up
        max_domain_scan: Enumeration budget per search (default from config)

    Returns:
        NotConvex, or ChainExhausted carrying row 1's strictly increasing chain

    Raises:
        OracleInconsistent: inverse contradicts forward, or forward not increasing
        DomainExhausted: the enumeration ends (or exceeds the budget) too early
    """
    if max_steps < 1:
        raise UsageError(f"max_steps must be >= 1, got {max_steps}")
    scan = max_domain_scan or REFUTER_CONFIG["max_domain_scan"]
    witness = _Refuter(oracle, scan).run(max_steps)
    log_info(f"refuter on '{oracle.name}': {type(witness).__name__}")
    return witness


def verify_witness(oracle: EmbeddingOracle, witness: Witness) -> bool:
    """Re-check a witness against the oracle."""
    if isinstance(witness, NotConvex):
        return (
            lex_cmp(witness.lower, witness.middle) is Order.LESS
            and lex_cmp(witness.middle, witness.upper) is Order.LESS
            and oracle.forward(witness.lower_pre) == witness.lower
            and oracle.forward(witness.upper_pre) == witness.upper
            and oracle.inverse(witness.middle) is None
        )
    chain = witness.chain
    return len(chain) == witness.steps and all(
        lex_cmp(a, b) is Order.LESS for a, b in zip(chain, chain[1:])
    )
