"""Words in generalised braid groups and the pure-braid abelianisation.

A braid word over a Coxeter system is a signed sequence of generators.
Equality in the braid group itself is never decided here; everything we
need lives in the Coxeter-Weyl quotient W and in the abelianisation of
the pure braid group, which is the free abelian group on the set of
positive roots (one basis element per quasireflection).

The central algorithm is the rewriting scan that expresses a pure word
as a product of the standard pure generators w s^2 w^{-1}: walk the word
left to right, tracking the W-image w of the prefix; for a letter s^e
with w1 = w s there are four cases

    length up,   e = +1 : emit nothing
    length up,   e = -1 : emit (w * s^2)^{-1}
    length down, e = +1 : emit (w1 * s^2)
    length down, e = -1 : emit nothing

and after each letter the prefix image becomes w1.  Projecting a factor
(x * s^2)^{+-1} to the abelianisation contributes +-1 at the root x(a_s),
which only depends on the W-image of the conjugator.

Word text format: whitespace-separated tokens like ``s0 s1 s2^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coxeter import (
    CapExceededError,
    WeylElement,
    evaluate,
    identity_matrix,
    length,
    mat_col,
    mat_vec,
    mul_gen_right,
    positive_form,
    positive_roots,
    longest_element,
    reduced_word,
)


class NotPureError(ValueError):
    """The word does not project to the identity of the Coxeter-Weyl group."""


@dataclass(frozen=True)
class BraidWord:
    system: object
    letters: tuple  # of (generator name, sign +-1)

    def __post_init__(self):
        for s, e in self.letters:
            self.system.index(s)
            if e not in (1, -1):
                raise ValueError(f"sign must be +-1, got {e!r}")

    def __len__(self):
        return len(self.letters)


@dataclass(frozen=True)
class RSFactor:
    """A signed standard pure generator: conjugator word, base s, sign.

    The concatenation conjugator + (base,) is always reduced, so the
    factor is (w s^2 w^{-1})^{sign} with l(w s) = l(w) + 1.
    """

    conjugator: tuple
    base: str
    sign: int


def parse_braid_word(system, text):
    letters = []
    for k, tok in enumerate(text.split()):
        name, _, exp = tok.partition("^")
        sign = 1
        if exp:
            if exp == "-1":
                sign = -1
            elif exp == "1":
                sign = 1
            else:
                raise ValueError(f"token {k}: bad exponent {tok!r}")
        try:
            system.index(name)
        except KeyError:
            raise ValueError(f"token {k}: unknown generator {tok!r}") from None
        letters.append((name, sign))
    return BraidWord(system, tuple(letters))


def format_braid_word(word):
    return " ".join(s if e == 1 else f"{s}^-1" for s, e in word.letters)


def braid_word(system, names, sign=1):
    return BraidWord(system, tuple((s, sign) for s in names))


def word_inverse(word):
    return BraidWord(
        word.system, tuple((s, -e) for s, e in reversed(word.letters))
    )


def word_concat(*words):
    system = words[0].system
    letters = []
    for w in words:
        if w.system != system:
            raise ValueError("cannot concatenate words over different systems")
        letters.extend(w.letters)
    return BraidWord(system, tuple(letters))


def project_to_weyl(word):
    """Image in the Coxeter-Weyl group (signs collapse: s^{-1} -> s)."""
    system = word.system
    m = identity_matrix(system.rank)
    for s, _ in word.letters:
        m = mul_gen_right(system, m, system.index(s))
    return WeylElement(m)


def canonical_lift(system, w):
    """The positive braid word spelled by the canonical reduced word of w."""
    return braid_word(system, reduced_word(system, w))


def _rs_scan(word):
    """Yield (conjugator matrix, base, sign) per emitted factor; return final w."""
    system = word.system
    m = identity_matrix(system.rank)
    out = []
    for s, e in word.letters:
        i = system.index(s)
        going_up = all(x >= 0 for x in mat_col(m, i))
        m1 = mul_gen_right(system, m, i)
        if going_up and e == -1:
            out.append((m, s, -1))
        elif not going_up and e == 1:
            out.append((m1, s, 1))
        m = m1
    return out, m


def rs_rewrite(word):
    """Factor a pure word over the standard pure generators.

    Returns the emitted factors in scan order.  Raises NotPureError if the
    word does not project to the identity.
    """
    system = word.system
    factors, final = _rs_scan(word)
    if final != identity_matrix(system.rank):
        raise NotPureError("word does not project to the identity in W")
    return tuple(
        RSFactor(reduced_word(system, WeylElement(m)), s, e) for m, s, e in factors
    )


def rs_factor_root(system, factor):
    w = evaluate(system, factor.conjugator)
    return positive_form(mat_col(w.matrix, system.index(factor.base)))


def proj_ab(word):
    """Projection of a pure word to the abelianised pure braid group.

    The result is a finitely supported map Root -> int; the factor
    (x * s^2)^{sign} of the rewriting scan contributes sign at the root
    x(a_s).  Representative independence is a theorem, exercised in tests.
    """
    system = word.system
    factors, final = _rs_scan(word)
    if final != identity_matrix(system.rank):
        raise NotPureError("word does not project to the identity in W")
    acc = {}
    for m, s, e in factors:
        root = positive_form(mat_col(m, system.index(s)))
        c = acc.get(root, 0) + e
        if c:
            acc[root] = c
        else:
            acc.pop(root, None)
    return acc


def proj_add(*projections):
    acc = {}
    for p in projections:
        for r, c in p.items():
            v = acc.get(r, 0) + c
            if v:
                acc[r] = v
            else:
                acc.pop(r, None)
    return acc


def proj_scale(p, k):
    return {r: c * k for r, c in p.items()} if k else {}


def proj_conjugate(system, p, w):
    """Push a projection along the root action of w (basis permutation)."""
    out = {}
    for r, c in p.items():
        img = positive_form(mat_vec(w.matrix, r.coords))
        out[img] = out.get(img, 0) + c
    return {r: c for r, c in out.items() if c}


def garside_square_projection(system, subsystem=None, cap=None):
    """Abelianised square of the canonical lift of the longest element.

    Equals the all-ones indicator on the positive roots of the (sub)system;
    that identity is asserted by the verification suite, not here.
    """
    kwargs = {} if cap is None else {"cap": cap}
    w0, word = longest_element(system, subsystem, **kwargs)
    lift = braid_word(system, word + word)
    return proj_ab(lift)


def coinvariant_projection(system, p, group_elements, cap=None):
    """Collapse a projection to orbit sums under the given Weyl elements.

    Orbits are taken on positive roots (the action is root -> positive
    form of g(root)); each orbit is keyed by its lexicographically least
    member.  Orbits touched by the support are reported even when their
    coefficient sum is zero.
    """
    from .coxeter import DEFAULT_ROOT_CAP

    cap = DEFAULT_ROOT_CAP if cap is None else cap
    mats = [g.matrix for g in group_elements]
    seen = {}
    out = {}
    for start in sorted(p):
        if start in seen:
            out[seen[start]] = out[seen[start]] + p[start]
            continue
        orbit = {start}
        queue = [start]
        while queue:
            r = queue.pop()
            for m in mats:
                img = positive_form(mat_vec(m, r.coords))
                if img not in orbit:
                    orbit.add(img)
                    queue.append(img)
                    if len(orbit) > cap:
                        raise CapExceededError("orbit closure exceeded the cap", cap)
        rep = min(orbit)
        for r in orbit:
            seen[r] = rep
        out[rep] = out.get(rep, 0) + p[start]
    return out


# --- randomised helpers shared by the verification suite --------------------

def random_word(system, rng, n, signed=True):
    letters = tuple(
        (rng.choice(system.generators), rng.choice((1, -1)) if signed else 1)
        for _ in range(n)
    )
    return BraidWord(system, letters)


def random_pure_word(system, rng, n):
    """A random pure word: u times the inverse of the canonical lift of u."""
    u = random_word(system, rng, n)
    tail = word_inverse(canonical_lift(system, project_to_weyl(u)))
    return word_concat(u, tail)


def _braid_shift_sites(word):
    system = word.system
    sites = []
    letters = word.letters
    for p in range(len(letters)):
        for a in system.generators:
            for b in system.generators:
                if a >= b:
                    continue
                m = system.order(a, b)
                if m not in (2, 3) or p + m > len(letters):
                    continue
                expect = [a if k % 2 == 0 else b for k in range(m)]
                chunk = letters[p:p + m]
                if all(e == 1 for _, e in chunk) and [s for s, _ in chunk] == expect:
                    repl = tuple((b if k % 2 == 0 else a, 1) for k in range(m))
                    sites.append((p, m, repl))
    return sites


def random_identity_rewrite(word, rng):
    """One random free-cancellation or braid-relation rewrite of the word.

    Moves: insert a cancelling pair s^e s^{-e}; delete an adjacent
    cancelling pair; replace a positive alternating subword <ab>^m by
    <ba>^m.  The braid-group element is unchanged.
    """
    system = word.system
    letters = list(word.letters)
    kinds = [0, 1, 2]
    rng.shuffle(kinds)
    for kind in kinds:
        if kind == 0:
            pos = rng.randrange(len(letters) + 1)
            s = rng.choice(system.generators)
            e = rng.choice((1, -1))
            letters[pos:pos] = [(s, e), (s, -e)]
            return BraidWord(system, tuple(letters))
        if kind == 1:
            sites = [
                p
                for p in range(len(letters) - 1)
                if letters[p][0] == letters[p + 1][0]
                and letters[p][1] == -letters[p + 1][1]
            ]
            if sites:
                p = rng.choice(sites)
                del letters[p:p + 2]
                return BraidWord(system, tuple(letters))
        if kind == 2:
            sites = _braid_shift_sites(word)
            if sites:
                p, m, repl = rng.choice(sites)
                letters[p:p + m] = list(repl)
                return BraidWord(system, tuple(letters))
    raise AssertionError("insertion move is always available")
