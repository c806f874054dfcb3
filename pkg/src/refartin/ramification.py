"""Ramification data for finite Galois extensions of local fields.

A :class:`RamificationData` is the combinatorial stand-in for L/K: the Galois
group, its lower-numbering filtration Gamma_0 >= Gamma_1 >= ... (normal in
Gamma, Gamma_1 a p-group, Gamma_0/Gamma_1 cyclic of order n prime to p), the
residue characteristic p (0 for equal characteristic zero, in which case
Gamma_1 is trivial), and the tame character Psi identifying Gamma_0/Gamma_1
with the n-th roots of unity.  Psi is stored as a generator of Gamma_0 mod
Gamma_1 together with an exponent k, meaning Psi(generator) = zeta_n^k; the
choice of the identification is part of the input.

Conventions follow Serre, Corps Locaux: for real u > -1 the group Gamma_u is
Gamma_ceil(u), the Herbrand function phi is the resulting continuous
piecewise-linear map with phi'(u) = 1/[Gamma_0 : Gamma_u], psi its inverse,
and the upper numbering is Gamma^v = Gamma_psi(v).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, gcd
from typing import NamedTuple, Sequence

from .cyclotomic import ZERO, frobenius_average, make_root
from .grouptheory import (
    ClassFunction,
    FiniteGroup,
    Subgroup,
    augmentation_character,
    cyclic_group,
    pullback,
    pushforward,
    quotient,
    subgroup,
)


class RamificationError(ValueError):
    """Raised when ramification data violates a structural invariant."""


def _is_prime_power(m: int, p: int) -> bool:
    if m == 1:
        return True
    while m % p == 0:
        m //= p
    return m == 1


@dataclass(frozen=True)
class RamificationData:
    """Validated ramification data; build through :func:`build_ramification`."""

    gamma: FiniteGroup
    filtration: tuple[frozenset[int], ...]  # Gamma_0, Gamma_1, ...; trailing 1's trimmed
    p: int
    tame_generator: int  # element of Gamma_0 generating Gamma_0/Gamma_1
    tame_exponent: int  # Psi(generator) = zeta_n^tame_exponent

    @property
    def e(self) -> int:
        """Ramification index |Gamma_0|."""
        return len(self.filtration[0]) if self.filtration else 1

    @property
    def f(self) -> int:
        """Inertial degree [Gamma : Gamma_0]."""
        return self.gamma.order // self.e

    @property
    def n(self) -> int:
        """Order of the tame quotient Gamma_0/Gamma_1."""
        return self.e // self.wild_order

    @property
    def wild_order(self) -> int:
        return len(self.filtration[1]) if len(self.filtration) > 1 else 1

    @property
    def depth(self) -> int:
        """Largest index with Gamma_i nontrivial, or -1 if Gamma_0 = 1."""
        return len(self.filtration) - 1

    def members_at(self, i: int) -> frozenset[int]:
        """Gamma_i as a member set (Gamma_{-1} = Gamma, trivial beyond the list)."""
        if i < 0:
            return frozenset(range(self.gamma.order))
        if i < len(self.filtration):
            return self.filtration[i]
        return frozenset({0})

    def subgroup_at(self, i: int) -> Subgroup:
        return _subgroup_cached(self.gamma, tuple(sorted(self.members_at(i))))

    def order_at(self, i: int) -> int:
        return len(self.members_at(i))


@lru_cache(maxsize=None)
def _subgroup_cached(g: FiniteGroup, members: tuple[int, ...]) -> Subgroup:
    return subgroup(g, members)


def build_ramification(
    gamma: FiniteGroup,
    filtration: Sequence[Sequence[int]],
    p: int,
    tame: tuple[int, int] | None = None,
) -> RamificationData:
    """Validate and assemble ramification data.

    ``filtration`` lists the member sets of Gamma_0, Gamma_1, ...; trailing
    trivial groups may be included or omitted.  ``tame`` is the pair
    (generator, exponent) describing Psi; it may be omitted when n = 1.
    """
    if p != 0 and not _probably_prime(p):
        raise RamificationError(f"residue characteristic {p} is neither 0 nor prime")
    groups = [frozenset(fl) for fl in filtration]
    while groups and len(groups[-1]) == 1:
        groups.pop()
    subs = [subgroup(gamma, tuple(sorted(m))) for m in groups]
    for i, s in enumerate(subs):
        if not s.is_normal():
            raise RamificationError(f"filtration group at index {i} is not normal")
    for i in range(1, len(subs)):
        if not groups[i] <= groups[i - 1]:
            raise RamificationError(f"filtration is not decreasing at index {i}")
    e = len(groups[0]) if groups else 1
    wild = len(groups[1]) if len(groups) > 1 else 1
    if p == 0:
        if wild != 1:
            raise RamificationError("equal characteristic zero requires trivial wild inertia")
    else:
        if not _is_prime_power(wild, p):
            raise RamificationError(f"wild inertia order {wild} is not a power of p={p}")
        if (e // wild) % p == 0:
            raise RamificationError("tame quotient order is divisible by p")
    n = e // wild
    # tame quotient must be cyclic of order n
    if groups:
        g0 = subs[0]
        g1_members = groups[1] if len(groups) > 1 else frozenset({0})
        g1_in_g0 = subgroup(g0.group, tuple(sorted(g0.members.index(m) for m in g1_members)))
        q, _ = quotient(g0.group, g1_in_g0)
        if not q.is_cyclic():
            raise RamificationError("tame quotient Gamma_0/Gamma_1 is not cyclic")
    if n == 1:
        # Psi carries no information on a trivial quotient
        generator, exponent = 0, 0
    else:
        if tame is None:
            raise RamificationError("tame character required when the tame quotient is nontrivial")
        generator, exponent = int(tame[0]), int(tame[1]) % n
        if generator not in groups[0]:
            raise RamificationError("tame generator must lie in Gamma_0")
        if proj_order(gamma, groups, generator) != n:
            raise RamificationError("tame generator does not generate Gamma_0/Gamma_1")
        if gcd(exponent, n) != 1:
            raise RamificationError(
                f"tame character exponent {exponent} is not injective modulo {n}"
            )
    return RamificationData(gamma, tuple(groups), p, generator, exponent)


def proj_order(gamma: FiniteGroup, groups: Sequence[frozenset[int]], g: int) -> int:
    """Order of g modulo Gamma_1 (inside Gamma_0/Gamma_1)."""
    g1 = groups[1] if len(groups) > 1 else frozenset({0})
    x, r = g, 1
    while x not in g1:
        x = gamma.table[x][g]
        r += 1
    return r


def _probably_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# Herbrand transition functions and the upper numbering


def herbrand_phi(r: RamificationData, u) -> Fraction:
    """phi(u) = integral_0^u dt/[Gamma_0 : Gamma_t]; identity on [-1, 0]."""
    u = Fraction(u)
    if u < -1:
        raise RamificationError("phi is defined for arguments >= -1")
    if u <= 0:
        return u
    g0 = r.e
    total = Fraction(0)
    i = 1
    left = Fraction(0)
    while True:
        gi = r.order_at(i)
        right = Fraction(i)
        if u <= right:
            return total + (u - left) * Fraction(gi, g0)
        total += (right - left) * Fraction(gi, g0)
        left = right
        if gi == 1:  # constant slope 1/g0 from here on
            return total + (u - left) * Fraction(1, g0)
        i += 1


def herbrand_psi(r: RamificationData, v) -> Fraction:
    """The inverse of phi (piecewise linear, exact rational arithmetic)."""
    v = Fraction(v)
    if v < -1:
        raise RamificationError("psi is defined for arguments >= -1")
    if v <= 0:
        return v
    g0 = r.e
    total = Fraction(0)
    i = 1
    left_u = Fraction(0)
    while True:
        gi = r.order_at(i)
        slope = Fraction(gi, g0)
        right_v = total + slope  # phi value at u = i
        if v <= right_v:
            return left_u + (v - total) / slope
        total = right_v
        left_u = Fraction(i)
        if gi == 1:
            return left_u + (v - total) / Fraction(1, g0)
        i += 1


def upper_group(r: RamificationData, v) -> Subgroup:
    """Gamma^v = Gamma_psi(v), with Gamma_u = Gamma_ceil(u) for u > -1."""
    v = Fraction(v)
    if v < -1:
        raise RamificationError("upper numbering is defined for arguments >= -1")
    if v == -1:
        return r.subgroup_at(-1)
    u = herbrand_psi(r, v)
    return r.subgroup_at(ceil(u))


def lower_jumps(r: RamificationData) -> list[int]:
    """Integers i >= 0 with Gamma_i != Gamma_{i+1}."""
    return [i for i in range(len(r.filtration)) if r.members_at(i) != r.members_at(i + 1)]


def upper_jumps(r: RamificationData) -> list[Fraction]:
    """The jump locations of the upper-numbering filtration (v >= 0)."""
    return [herbrand_phi(r, i) for i in lower_jumps(r)]


# ---------------------------------------------------------------------------
# the Artin character and its refinement


@lru_cache(maxsize=None)
def bar_n(n: int) -> ClassFunction:
    """The bisecting central function on the standard cyclic group of order n,
    identified with mu_n via generator -> zeta_n:

        (1/n) * sum_{r=0}^{n-1} r * chi_r,   chi_r(zeta) = zeta^r.

    Its value at zeta != 1 is 1/(zeta - 1), and (n-1)/2 at the identity.
    """
    g = cyclic_group(n)
    vals = []
    for a in range(n):
        total: dict[int, Fraction] = {}
        for rr in range(n):
            e = (rr * a) % n
            total[e] = total.get(e, Fraction(0)) + Fraction(rr, n)
        from .cyclotomic import from_terms

        vals.append(from_terms(n, list(total.items())))
    return ClassFunction(g, tuple(vals))


def power_character(n: int, r: int) -> ClassFunction:
    """chi_r on the standard cyclic group of order n: a -> zeta_n^(r a)."""
    g = cyclic_group(n)
    return ClassFunction(g, tuple(make_root(n, r * a) for a in range(n)))


def artin_character(r: RamificationData) -> ClassFunction:
    """Ar = sum_{i>=0} 1/[Gamma_0:Gamma_i] Ind u_{Gamma_i}; rational valued."""
    total = _zero_cf(r.gamma)
    for i in range(len(r.filtration)):
        s = r.subgroup_at(i)
        ind = pushforward(s.inclusion, augmentation_character(s.group))
        total = total + ind.scale(Fraction(s.order, r.e))
    return total


def _zero_cf(g: FiniteGroup) -> ClassFunction:
    return ClassFunction(g, tuple(ZERO for _ in g.classes))


def _tame_part_on_quotient(
    r: RamificationData, g0: Subgroup, wild_members_in_g0: tuple[int, ...]
) -> ClassFunction:
    """Inf of the Psi-pullback of bar_n from Gamma_0/Gamma_1 up to Gamma_0."""
    n = r.n
    wild_sub = subgroup(g0.group, wild_members_in_g0)
    q, proj = quotient(g0.group, wild_sub)
    if n == 1:
        return _zero_cf(g0.group)
    gen_q = proj.mapping[g0.members.index(r.tame_generator)]
    # discrete log base gen_q in the cyclic group q
    dlog = {0: 0}
    x, t = gen_q, 1
    while x != 0:
        dlog[x] = t
        x = q.table[x][gen_q]
        t += 1
    bn = bar_n(n)
    vals = tuple(bn.values[(dlog[cls[0]] * r.tame_exponent) % n] for cls in q.classes)
    return pullback(proj, ClassFunction(q, vals))


def refined_artin(r: RamificationData) -> ClassFunction:
    """The refined Artin character, built from the lower-numbering filtration:

        Ind_{Gamma_0}^Gamma ( Inf(Psi^* bar_n)
                              + 1/2 Ind u_{Gamma_1}
                              + 1/2 sum_{i>=1} 1/[Gamma_0:Gamma_i] Ind u_{Gamma_i} ).

    Values lie in Q(zeta_n); adding the valuewise conjugate gives back the
    Artin character.
    """
    return _refined_artin_cached(r)


@lru_cache(maxsize=None)
def _refined_artin_cached(r: RamificationData) -> ClassFunction:
    g0 = r.subgroup_at(0)
    wild = tuple(sorted(g0.members.index(m) for m in r.members_at(1)))
    inner = _tame_part_on_quotient(r, g0, wild)
    wild_sub = subgroup(g0.group, wild)
    inner = inner + pushforward(
        wild_sub.inclusion, augmentation_character(wild_sub.group)
    ).scale(Fraction(1, 2))
    for i in range(1, len(r.filtration)):
        si = r.subgroup_at(i)
        si0 = subgroup(g0.group, tuple(sorted(g0.members.index(m) for m in si.members)))
        ind = pushforward(si0.inclusion, augmentation_character(si0.group))
        inner = inner + ind.scale(Fraction(si.order, 2 * r.e))
    return pushforward(g0.inclusion, inner)


def refined_artin_upper(r: RamificationData) -> ClassFunction:
    """The same character computed through the upper-numbering filtration:

        Ind_{Gamma^0}^Gamma ( Inf(Psi^* bar_n)
                              + 1/2 Ind u_{Gamma^{1/g0}}
                              + 1/(2 g0) sum_{i>=1} Ind u_{Gamma^{i/g0}} ).

    Kept as an independent code path; must agree exactly with
    :func:`refined_artin`.
    """
    g0sub = upper_group(r, 0)
    g0 = g0sub.group
    e = r.e
    wild_members = upper_group(r, Fraction(1, e)).members
    wild = tuple(sorted(g0sub.members.index(m) for m in wild_members))
    inner = _tame_part_on_quotient(r, g0sub, wild)
    wild_sub = subgroup(g0, wild)
    inner = inner + pushforward(
        wild_sub.inclusion, augmentation_character(wild_sub.group)
    ).scale(Fraction(1, 2))
    counts: dict[tuple[int, ...], int] = {}
    i = 1
    while True:
        members = upper_group(r, Fraction(i, e)).members
        if len(members) == 1:
            break
        key = tuple(sorted(g0sub.members.index(m) for m in members))
        counts[key] = counts.get(key, 0) + 1
        i += 1
    for key, count in counts.items():
        si = subgroup(g0, key)
        ind = pushforward(si.inclusion, augmentation_character(si.group))
        inner = inner + ind.scale(Fraction(count, 2 * e))
    return pushforward(g0sub.inclusion, inner)


def p_average(chi: ClassFunction, p: int, n: int) -> ClassFunction:
    """Average chi valuewise over the Frobenius orbit zeta -> zeta^p.

    For p = 0 the input is returned unchanged.  Requires p coprime to n and
    to the conductor of every value.
    """
    if p == 0:
        return chi
    if n > 0 and gcd(p, n) != 1:
        raise RamificationError(f"p={p} divides the modulus n={n}")
    vals = []
    for v in chi.values:
        if gcd(p, v.conductor) != 1:
            raise RamificationError(f"p={p} divides a value conductor {v.conductor}")
        vals.append(frobenius_average(v, p))
    return ClassFunction(chi.group, tuple(vals))


def refined_artin_averaged(r: RamificationData) -> ClassFunction:
    """The Gal(Q_p(mu_n)/Q_p)-average of the refined Artin character."""
    return p_average(refined_artin(r), r.p, r.n)


# ---------------------------------------------------------------------------
# derived data for subextensions and quotients


class SubextensionData(NamedTuple):
    data: RamificationData  # ramification data of L/M, on the subgroup's own group
    f_mk: int  # inertial degree [Gamma : Gamma_0 Gamma'] of M/K
    e_wild: int  # wild ramification degree |Gamma_1| / |Gamma'_1|


def subgroup_data(r: RamificationData, sub: Subgroup) -> SubextensionData:
    """Ramification data of L/M for the subgroup Gamma' fixing M.

    Lower numbering is compatible with subgroups: Gamma'_i = Gamma' n Gamma_i.
    The tame character of L/M satisfies Psi_{L/K} = Psi_{L/M}^e_wild on
    Gamma'_0/Gamma'_1, which determines it since e_wild is coprime to n'.
    """
    if sub.parent != r.gamma:
        raise RamificationError("subgroup belongs to a different group")
    h = sub.group
    memset = set(sub.members)
    filtration = []
    for i in range(len(r.filtration)):
        inter = sorted(memset & r.members_at(i))
        filtration.append([sub.members.index(m) for m in inter])
    g0gp = len({r.gamma.table[x][y] for x in r.members_at(0) for y in sub.members})
    f_mk = r.gamma.order // g0gp
    wild_sub = len(memset & r.members_at(1))
    e_wild = r.order_at(1) // wild_sub
    # tame character of L/M
    groups_h = [frozenset(fl) for fl in filtration]
    while groups_h and len(groups_h[-1]) == 1:
        groups_h.pop()
    n_sub = (len(groups_h[0]) if groups_h else 1) // (
        len(groups_h[1]) if len(groups_h) > 1 else 1
    )
    tame = None
    if n_sub > 1:
        gen_h = min(
            g
            for g in sorted(groups_h[0])
            if proj_order(h, groups_h, g) == n_sub
        )
        # discrete log of gen_h in Gamma_0/Gamma_1 with respect to r's generator
        t = _dlog_mod_wild(r, sub.members[gen_h])
        d = r.n // n_sub
        assert t % d == 0, "subgroup tame part must embed into mu_n"
        t0 = (t // d) % n_sub
        k_sub = (t0 * r.tame_exponent * pow(e_wild % n_sub, -1, n_sub)) % n_sub
        tame = (gen_h, k_sub)
    data = build_ramification(h, filtration, r.p, tame)
    return SubextensionData(data, f_mk, e_wild)


def _dlog_mod_wild(r: RamificationData, g: int) -> int:
    """Discrete log of g modulo Gamma_1 with respect to the tame generator."""
    wild = r.members_at(1)
    x, t = 0, 0
    gen = r.tame_generator
    for t in range(r.n):
        # does gen^t = g mod Gamma_1, i.e. gen^t * g^-1 in Gamma_1?
        if r.gamma.table[x][r.gamma.inverse[g]] in wild:
            return t
        x = r.gamma.table[x][gen]
    raise RamificationError("element does not lie in the tame quotient span")


def quotient_data(r: RamificationData, normal: Subgroup) -> RamificationData:
    """Ramification data of M/K for the quotient Gamma/N (Herbrand's theorem).

    The quotient's upper filtration is the image of the upper filtration,
    (Gamma/N)^v = image(Gamma^v), which is directly computable.  Its lower
    filtration is recovered exactly by integrating the index function
    [Q^0 : Q^w] between the (finitely many, rational) upper breakpoints and
    inverting at integers.  The quotient tame character is Psi^d with
    d = n/n', i.e. the exponent is kept and read modulo n'.
    """
    if normal.parent != r.gamma:
        raise RamificationError("subgroup belongs to a different group")
    q, proj = quotient(r.gamma, normal)

    def qu(v) -> frozenset[int]:
        """Member set of (Gamma/N)^v = image(Gamma^v); at an exact jump this
        is the larger group, by the ceiling convention inside upper_group."""
        return frozenset(proj.mapping[g] for g in upper_group(r, v).members)

    img0 = qu(Fraction(0))
    q0_order = len(img0)
    # breakpoints of the piecewise-constant integrand [Q^0 : Q^w]
    bps = [herbrand_phi(r, i) for i in range(len(r.filtration) + 1)]
    filtration: list[list[int]] = [sorted(img0)]
    u = 1
    while len(filtration[-1]) > 1:
        # solve psi_Q(w) = u for w, walking the segments of the integrand
        acc = Fraction(0)
        w = None
        for j, left in enumerate(bps):
            last = j + 1 >= len(bps)
            right = None if last else bps[j + 1]
            sample = left + 1 if last else (left + right) / 2
            slope = Fraction(q0_order, len(qu(sample)))
            if last or acc + (right - left) * slope >= u:
                w = left + (u - acc) / slope
                break
            acc += (right - left) * slope
        filtration.append(sorted(qu(w)))
        u += 1
    groups_q = [frozenset(fl) for fl in filtration]
    while groups_q and len(groups_q[-1]) == 1:
        groups_q.pop()
    e_q = len(groups_q[0]) if groups_q else 1
    n_q = e_q // (len(groups_q[1]) if len(groups_q) > 1 else 1)
    tame = None
    if n_q > 1:
        tame = (proj.mapping[r.tame_generator], r.tame_exponent % n_q)
    return build_ramification(q, filtration, r.p, tame)


# ---------------------------------------------------------------------------
# different and discriminant valuations


def different_valuation(r: RamificationData) -> int:
    """nu_L of the different of L/K: sum_{i>=0} (|Gamma_i| - 1)."""
    return sum(r.order_at(i) - 1 for i in range(len(r.filtration)))


def discriminant_valuation(r: RamificationData, sub: Subgroup) -> Fraction:
    """nu_K of the discriminant of M/K (M the field fixed by the subgroup),
    computed by the tower rule:

        nu_M(D_{M/K}) = (nu_L(D_{L/K}) - nu_L(D_{L/M})) / e_{L/M}
        nu_K(d_{M/K}) = f_{M/K} * nu_M(D_{M/K}).

    Always an exact rational; an integer on data coming from genuine
    extensions.
    """
    sd = subgroup_data(r, sub)
    d_lk = different_valuation(r)
    d_lm = different_valuation(sd.data)
    e_lm = sd.data.e
    return Fraction(sd.f_mk * (d_lk - d_lm), e_lm)
