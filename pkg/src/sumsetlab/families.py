"""Deterministic generators for the experiment set families.

Every family is fully determined by its spec string (and seed where
randomized), so experiment tables are reproducible bit for bit across
machines and languages.

The RNG is splitmix64: state advances by adding the odd constant
0x9E3779B97F4A7C15 (mod 2**64), and each output mixes the new state as

    z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
    z ^= z >> 27;  z *= 0x94D049BB133111EB
    z ^= z >> 31

Draws in [1, g] are taken as ``1 + (output mod g)``.  Test vectors for
seed 0 (first three outputs): 0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4,
0x06C45D188009454F.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .convexity import FunctionSpec, eval_fn, format_function, parse_function
from .core import OrderedSet, Scalar, canon, format_element
from .errors import InputError

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """The fixed 64-bit generator behind every randomized family."""

    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_in(self, lo: int, hi: int) -> int:
        """Draw from [lo, hi] as lo + (output mod width); documented rule."""
        if hi < lo:
            raise InputError("empty draw range")
        return lo + self.next_u64() % (hi - lo + 1)


def gen_interval(n: int) -> OrderedSet:
    """{1, ..., n}."""
    if n < 1:
        raise InputError("interval length must be >= 1")
    return OrderedSet(range(1, n + 1))


def gen_power(n: int, m: int) -> OrderedSet:
    """{i**m : 1 <= i <= n}; has convexity order exactly m - 1."""
    if n < 1 or m < 1:
        raise InputError("gen_power needs n >= 1 and m >= 1")
    return OrderedSet(i**m for i in range(1, n + 1))


def gen_ap(n: int, base: Scalar = 1, step: Scalar = 1) -> OrderedSet:
    base, step = canon(base), canon(step)
    if n < 1 or step <= 0:
        raise InputError("gen_ap needs n >= 1 and step > 0")
    return OrderedSet(base + i * step for i in range(n))


def gen_random_s_convex(n: int, s: int, seed: int, gap_bound: int) -> OrderedSet:
    """A seeded set with convexity order >= s, size exactly n.

    Construction: draw a strictly increasing sequence of n - s positive
    integers whose consecutive gaps are uniform in [1, gap_bound], then
    integrate s times (each integration prepends a fresh positive head
    and takes running sums, so differencing recovers the previous
    level).  Level s of the result is the drawn sequence, hence every
    level up to s is strictly increasing.
    """
    if s < 0:
        raise InputError("convexity order must be >= 0")
    if gap_bound < 1:
        raise InputError("gap bound must be >= 1")
    if n <= s + 1:
        raise InputError(f"need n >= s + 2, got n={n}, s={s}")
    rng = SplitMix64(seed)
    base_len = n - s
    vals = [rng.next_in(1, gap_bound)]
    for _ in range(base_len - 1):
        vals.append(vals[-1] + rng.next_in(1, gap_bound))
    for _ in range(s):
        acc = rng.next_in(1, gap_bound)
        integrated = [acc]
        for v in vals:
            acc += v
            integrated.append(acc)
        vals = integrated
    return OrderedSet(vals)


def gen_gap(
    dims: Sequence[int], steps: Sequence[Scalar], base: Scalar = 0
) -> OrderedSet:
    """The generalized arithmetic progression {base + sum_j i_j * step_j}.

    Properness (all sums distinct, so the size is the product of the
    dims) is enforced: a collision raises InputError rather than
    silently deduplicating, because doubling experiments rely on the
    exact size.
    """
    if not dims or len(dims) != len(steps):
        raise InputError("dims and steps must be non-empty and matched")
    if any(d < 1 for d in dims):
        raise InputError("every dim must be >= 1")
    steps = [canon(s) for s in steps]
    if any(s <= 0 for s in steps):
        raise InputError("every step must be positive")
    base = canon(base)
    values = [
        base + sum(i * s for i, s in zip(combo, steps))
        for combo in itertools.product(*(range(d) for d in dims))
    ]
    expected = 1
    for d in dims:
        expected *= d
    if len(set(values)) != expected:
        raise InputError("improper GAP: coordinate sums collide")
    return OrderedSet(sorted(values))


def gen_composed(f: FunctionSpec, B: OrderedSet) -> OrderedSet:
    """The image f(B); exactness and monotonicity checked by eval_fn."""
    return eval_fn(f, B)


# ---------------------------------------------------------------------------
# Family specs and their textual form.
#
#   interval:n=64            power:n=64,m=3           ap:n=10,base=1,step=1/2
#   rsc:n=64,s=2,seed=7,gap=8
#   gap:dims=8x8,steps=1/1:1000/1,base=0
#   composed:f=root:2,inner=power:n=64,m=2
#
# "rsc" abbreviates random_s_convex.  In a composed spec, everything
# between "f=" and ",inner=" is the function text and everything after
# "inner=" is the inner family (both may contain ':' and ',').

_CANONICAL_NAMES = {
    "interval": "interval",
    "power": "power",
    "ap": "ap",
    "rsc": "random_s_convex",
    "random_s_convex": "random_s_convex",
    "gap": "gap",
    "composed": "composed",
}


@dataclass(frozen=True)
class FamilySpec:
    """A parsed family description; (name, params, seed) fixes the set."""

    name: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def generate(self) -> OrderedSet:
        return generate(self)


def parse_family(text: str, default_seed: int = 0) -> FamilySpec:
    head, _, rest = text.partition(":")
    name = _CANONICAL_NAMES.get(head.strip())
    if name is None:
        raise InputError(f"unknown family {head!r}")
    if name == "composed":
        return _parse_composed(rest, default_seed)
    params: dict = {}
    if rest:
        for part in rest.split(","):
            key, eq, value = part.partition("=")
            if not eq:
                raise InputError(f"expected key=value, got {part!r}")
            params[key.strip()] = value.strip()
    return _build_spec(name, params, default_seed)


def _parse_composed(rest: str, default_seed: int) -> FamilySpec:
    if not rest.startswith("f="):
        raise InputError("composed spec must start with f=")
    marker = ",inner="
    cut = rest.find(marker)
    if cut < 0:
        raise InputError("composed spec must contain ,inner=")
    fn_text = rest[2:cut]
    inner_text = rest[cut + len(marker):]
    fn = parse_function(fn_text)
    inner = parse_family(inner_text, default_seed)
    return FamilySpec("composed", {"f": fn, "inner": inner}, inner.seed)


def _build_spec(name: str, raw: dict, default_seed: int) -> FamilySpec:
    def need_int(key: str, default=None) -> int:
        if key not in raw:
            if default is None:
                raise InputError(f"family {name!r} needs parameter {key}")
            return default
        try:
            return int(raw[key])
        except ValueError as exc:
            raise InputError(f"parameter {key} must be an integer") from exc

    def need_rational(key: str, default=None) -> Scalar:
        if key not in raw:
            if default is None:
                raise InputError(f"family {name!r} needs parameter {key}")
            return default
        try:
            return canon(Fraction(raw[key]))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"parameter {key} must be a rational") from exc

    if name == "interval":
        return FamilySpec(name, {"n": need_int("n")})
    if name == "power":
        return FamilySpec(name, {"n": need_int("n"), "m": need_int("m")})
    if name == "ap":
        return FamilySpec(
            name,
            {
                "n": need_int("n"),
                "base": need_rational("base", 1),
                "step": need_rational("step", 1),
            },
        )
    if name == "random_s_convex":
        seed = need_int("seed", default_seed)
        return FamilySpec(
            name,
            {
                "n": need_int("n"),
                "s": need_int("s"),
                "gap": need_int("gap", 8),
            },
            seed,
        )
    if name == "gap":
        if "dims" not in raw or "steps" not in raw:
            raise InputError("gap family needs dims= and steps=")
        try:
            dims = tuple(int(d) for d in raw["dims"].split("x"))
            steps = tuple(
                canon(Fraction(s)) for s in raw["steps"].split(":")
            )
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError("bad gap dims/steps") from exc
        return FamilySpec(
            name, {"dims": dims, "steps": steps, "base": need_rational("base", 0)}
        )
    raise InputError(f"unknown family {name!r}")


def generate(spec: FamilySpec) -> OrderedSet:
    p = spec.params
    if spec.name == "interval":
        return gen_interval(p["n"])
    if spec.name == "power":
        return gen_power(p["n"], p["m"])
    if spec.name == "ap":
        return gen_ap(p["n"], p["base"], p["step"])
    if spec.name == "random_s_convex":
        return gen_random_s_convex(p["n"], p["s"], spec.seed, p["gap"])
    if spec.name == "gap":
        return gen_gap(p["dims"], p["steps"], p["base"])
    if spec.name == "composed":
        return gen_composed(p["f"], generate(p["inner"]))
    raise InputError(f"unknown family {spec.name!r}")


def format_family(spec: FamilySpec) -> str:
    """Canonical spec string (parses back to an equal spec)."""
    p = spec.params
    if spec.name == "interval":
        return f"interval:n={p['n']}"
    if spec.name == "power":
        return f"power:n={p['n']},m={p['m']}"
    if spec.name == "ap":
        return (
            f"ap:n={p['n']},base={format_element(p['base'])},"
            f"step={format_element(p['step'])}"
        )
    if spec.name == "random_s_convex":
        return f"rsc:n={p['n']},s={p['s']},seed={spec.seed},gap={p['gap']}"
    if spec.name == "gap":
        dims = "x".join(str(d) for d in p["dims"])
        steps = ":".join(format_element(s) for s in p["steps"])
        return f"gap:dims={dims},steps={steps},base={format_element(p['base'])}"
    if spec.name == "composed":
        return (
            f"composed:f={format_function(p['f'])},inner={format_family(p['inner'])}"
        )
    raise InputError(f"unknown family {spec.name!r}")
