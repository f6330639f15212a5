"""Structural cross-checks: point-permutation images, the central boundary
twist of the cover, and the small generating sets."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from .cover import (boundary_twist_action, build_cover, lift_matrix, matrix_power,
                    verify_smod_relator)
from .perm import closure, generator_image, w_group, w_order
from .presentations import Presentation, build, chain_word, lmod_presentation
from .sphere_rep import (SphereAutomorphism, finv, fmul, relator_holds,
                         rep_of_word)
from .words import Generator, Word, format_word, h, invert, r, substitute, t


class RewriteNotFound(LookupError):
    pass


@dataclass
class CheckReport:
    name: str
    ok: bool
    witness: Dict[str, object] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "OK" if self.ok else "FAIL"

    def line(self) -> str:
        return f"{self.name} {self.verdict}"

    def as_dict(self) -> dict:
        return {"check": self.name, "verdict": self.verdict, "witness": self.witness}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=1, default=str)


def check_psi_surjectivity(n: int, variant: str = "closed") -> CheckReport:
    """The permutation images of the generators generate the parity group."""
    if variant not in ("closed", "marked"):
        raise ValueError("variant must be closed or marked")
    m = 2 * n + 2
    pres = lmod_presentation(variant, n)
    gens = {generator_image(g, m) for g in pres.generators}
    group = closure(gens, m)
    starred = variant == "marked"
    target = w_group(n, starred) if n <= 3 else None
    expected = w_order(n, starred)
    ok = len(group) == expected and (target is None or group == target)
    witness = {"closure_size": len(group), "expected": expected,
               "generator_images": sorted(str(p) for p in gens)}
    if not ok and target is not None:
        extra = group - target
        witness["outside_target"] = str(next(iter(extra))) if extra else None
    return CheckReport(f"psi-surjectivity[{variant}](n={n})", ok, witness)


def check_central_twist(n: int, k: int) -> CheckReport:
    """t_{1,2n+1}^k on the boundary cover: the boundary twist, central, nontrivial.

    The nontriviality is certified on the fundamental group of the cover,
    where the lift is conjugation by the boundary loop.  On first homology
    a boundary twist acts trivially, so the matrix identities checked are
    lift(t)^k = I and commutation with every generator's lift.
    """
    model = build_cover(n, k, "boundary")
    pres = lmod_presentation("boundary", n)
    T = lift_matrix(model, t(1, 2 * n + 1)).matrix
    Tk = matrix_power(T, k)
    I = matrix_power(T, 0)
    on_kernel = boundary_twist_action(model)
    m = model.m
    loop = ()
    for _ in range(k):
        loop = fmul(loop, tuple(range(1, m)))
    c = SphereAutomorphism(m, [fmul(fmul(loop, (j,)), finv(loop)) for j in range(1, m)])
    not_central = []
    for g in pres.generators:
        f = rep_of_word(Word.gen(g), m)
        G = lift_matrix(model, Word.gen(g)).matrix
        if f.compose(c) != c.compose(f) or not np.array_equal(G.dot(Tk), Tk.dot(G)):
            not_central.append(str(g))
    ok = (on_kernel["equals_boundary_twist"] and on_kernel["nontrivial_on_kernel"]
          and not not_central and np.array_equal(Tk, I))
    witness = dict(on_kernel)
    witness.update({"homology_power_is_identity": bool(np.array_equal(Tk, I)),
                    "not_commuting": not_central, "rank": model.rank})
    return CheckReport(f"central-twist(n={n},k={k})", ok, witness)


def generating_set(family: str, n: int) -> List[Word]:
    if family.lower().endswith("closed"):
        return [h(i) for i in range(1, 2 * n, 2)] + [t(1, 2), r()]
    return [h(i) for i in range(1, 2 * n)] + [t(1, 2)]


def rewrite_map(family: str, n: int) -> Dict[Generator, Word]:
    """Express every declared generator through the small generating set.

    Even h's come from conjugating odd ones by r, adjacent twists from
    h_{l-1} t_{l-1,l} h_{l-1}^-1 = t_{l,l+1}, and the remaining twists
    from the chain relations.
    """
    closed = family.lower().endswith("closed")
    top_h = 2 * n if closed else 2 * n - 1
    out: Dict[Generator, Word] = {}
    for i in range(1, top_h + 1):
        if i % 2 or not closed:
            out[Generator("h", (i,))] = h(i)
        else:
            out[Generator("h", (i,))] = r() * h(2 * n - i + 1) * r(-1)
    H = lambda i: out[Generator("h", (i,))]
    out[Generator("t", (1, 2))] = t(1, 2)
    for l in range(2, 2 * n + 1):
        out[Generator("t", (l, l + 1))] = H(l - 1) * out[Generator("t", (l - 1, l))] * invert(H(l - 1))
    for i in range(1, 2 * n + 2):
        for j in range(i + 2, 2 * n + 2):
            out[Generator("t", (i, j))] = substitute(chain_word(i, j), out)
    if closed:
        out[Generator("r")] = r()
    return out


def check_generation(family: str, n: int, k: Optional[int] = None) -> CheckReport:
    """Certify the rewrite of every declared generator into the small set."""
    pres: Presentation = build(family, n=n, k=k)
    small = {g for w in generating_set(family, n) for g in w.generators()}
    images = rewrite_map(family, n)
    smod = family.lower().startswith("smod")
    variant = family.lower().split("-", 1)[1]
    model = build_cover(n, k, variant) if smod else None
    m = 2 * n + 2
    failed, rewrites = [], {}
    for g in pres.generators:
        if g not in images:
            raise RewriteNotFound(str(g))
        img = images[g]
        if not img.generators() <= small:
            raise RewriteNotFound(f"{g} rewrites outside the generating set")
        rel = Word.gen(g) * invert(img)
        if smod:
            ok = verify_smod_relator(model, rel).holds
        else:
            ok = relator_holds(rel, m, exact=(variant == "boundary"))
        rewrites[str(g)] = format_word(img) if len(img) <= 40 else f"<{len(img)} letters>"
        if not ok:
            failed.append(str(g))
    label = f"generation[{family}](n={n}" + (f",k={k})" if k is not None else ")")
    return CheckReport(label, not failed, {"failed": failed, "rewrites": rewrites,
                                           "generating_set": sorted(map(str, small))})
