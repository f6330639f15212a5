"""Command-line front end: ``smodpres <emit|verify|h1|liftable|lemmas|report>``."""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from typing import List, Optional

from . import abelianize, consistency, cover, presentations, sphere_rep
from .perm import OddSize, is_liftable, psi
from .words import WordSyntaxError, parse_word

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_USAGE)


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="smodpres", description="Presentations of liftable and symmetric mapping class groups.")
    p.add_argument("command", choices=["emit", "verify", "h1", "liftable", "lemmas", "report"])
    p.add_argument("word", nargs="?", help="word for the liftable command")
    p.add_argument("--family", "-f")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int, help="number of marked points (pmod family)")
    p.add_argument("--format", choices=["text", "json", "algebra"], default="text")
    p.add_argument("--engine", choices=["sphere", "cover", "both"], default="sphere")
    p.add_argument("--expect", action="store_true", help="compare h1 with the closed form")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-corrupt", action="store_true",
                   help="append a corrupted copy of one relator (harness self-test)")
    p.add_argument("--output", "-o", help="write output to a file")
    return p


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required for {args.command}")


def _presentation(args) -> presentations.Presentation:
    _need(args, "family")
    fam = args.family.lower()
    if fam.startswith("pmod"):
        m = args.m if args.m is not None else args.n
        if m is None:
            raise UsageError("--m is required for pmod")
        return presentations.pmod_presentation(m)
    _need(args, "n")
    return presentations.build(fam, n=args.n, k=args.k)


def cmd_emit(args) -> tuple:
    pres = _presentation(args)
    if args.format == "json":
        return pres.to_json() + "\n", EXIT_OK
    if args.format == "algebra":
        return pres.to_algebra(), EXIT_OK
    return pres.to_text(), EXIT_OK


def _variant(family: str) -> str:
    return family.lower().split("-", 1)[1] if "-" in family else ""


def cmd_verify(args) -> tuple:
    pres = _presentation(args)
    fam = args.family.lower()
    variant = _variant(fam)
    if not (fam.startswith("lmod") or fam.startswith("smod")):
        raise UsageError("verify needs an lmod-* or smod-* family")
    relators = list(pres.relators)
    if args.inject_corrupt:
        rng = random.Random(args.seed)
        victim = rng.choice([rel for rel in relators if rel.word])
        relators.append(rng.choice(presentations.off_by_one_variants(victim)))
    m = 2 * args.n + 2
    results = {}
    witness = {}
    if args.engine in ("sphere", "both"):
        for rel in relators:
            t0 = time.perf_counter()
            peak: list = []
            f = sphere_rep.rep_of_word(rel.word, m, track=peak)
            ok = f.is_identity() if variant == "boundary" else sphere_rep.is_inner(f) is not None
            results[str(rel.tag)] = sphere_rep.RelatorResult(str(rel.tag), ok, peak[0],
                                                             1000 * (time.perf_counter() - t0))
            if not ok:
                witness[str(rel.tag)] = "sphere: automorphism is not " + (
                    "the identity" if variant == "boundary" else "inner")
    if args.engine in ("cover", "both"):
        if not (fam.startswith("smod") or variant == "boundary"):
            raise UsageError("the cover engine needs an smod-* or boundary family")
        k = args.k if args.k is not None else 3
        model = cover.build_cover(args.n, k, variant)
        Z = cover.deck_matrix(model)
        for rel in relators:
            v = cover.verify_smod_relator(model, rel, Z)
            prev = results.get(str(rel.tag))
            res = v.as_result()
            if prev is not None:
                res = sphere_rep.RelatorResult(res.tag, prev.ok and res.ok,
                                               max(prev.max_image_length, res.max_image_length),
                                               prev.elapsed_ms + res.elapsed_ms)
            results[str(rel.tag)] = res
            if not v.holds:
                witness[str(rel.tag)] = f"cover: {v}"
    ordered = list(results.values())
    if args.format == "json":
        body = sphere_rep.report_json(ordered) + "\n"
    else:
        body = sphere_rep.report_text(ordered) + "\n"
        words = {str(rel.tag): rel.word for rel in relators}
        for tag in sorted(witness):
            body += f"# witness {tag}: {witness[tag]}; word = {words[tag]}\n"
    return body, EXIT_OK if all(r.ok for r in ordered) else EXIT_FAIL


def cmd_h1(args) -> tuple:
    pres = _presentation(args)
    group = abelianize.h1(pres)
    out = group.to_json() if args.format == "json" else str(group)
    status = EXIT_OK
    if args.expect:
        fam = args.family.lower()
        key = fam if not fam.startswith("pmod") else "pmod"
        n = args.n if not fam.startswith("pmod") else pres.params["m"]
        expected = abelianize.expected_h1(key, n, args.k)
        if expected != group:
            out += f"\n# expected {expected}"
            status = EXIT_FAIL
    return out + "\n", status


def cmd_liftable(args) -> tuple:
    _need(args, "n")
    if args.word is None:
        raise UsageError("liftable needs a word")
    w = parse_word(args.word)
    cls = is_liftable(w, args.n)
    name = "not-liftable" if not cls.liftable else cls.value
    image = psi(w, 2 * args.n + 2)
    if args.format == "json":
        return json.dumps({"class": name, "permutation": str(image)}) + "\n", EXIT_OK
    return f"{name} {image}\n", EXIT_OK


def cmd_lemmas(args) -> tuple:
    _need(args, "n")
    m = 2 * args.n + 2
    items = [(li.name, li.relator()) for li in presentations.lemma_identities(args.n)]
    results = sphere_rep.verify_words(items, m)
    body = sphere_rep.report_json(results) if args.format == "json" else sphere_rep.report_text(results)
    return body + "\n", EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


def cmd_report(args) -> tuple:
    _need(args, "n")
    n = args.n
    k = args.k if args.k is not None else 3
    reports: List[consistency.CheckReport] = []
    if n <= 3:
        reports.append(consistency.check_psi_surjectivity(n, "closed"))
        reports.append(consistency.check_psi_surjectivity(n, "marked"))
    reports.append(consistency.check_central_twist(n, k))
    for fam in ("lmod-closed", "lmod-marked", "lmod-boundary"):
        reports.append(consistency.check_generation(fam, n))
    for fam in ("smod-closed", "smod-marked", "smod-boundary"):
        reports.append(consistency.check_generation(fam, n, k))
    model = cover.build_cover(n, k, "closed")
    euler = model.euler_check()
    reports.append(consistency.CheckReport(f"cover-rank(n={n},k={k})", bool(euler["ok"]), euler))
    if args.format == "json":
        body = json.dumps([r.as_dict() for r in reports], indent=1, default=str)
    else:
        body = "\n".join(r.line() for r in reports)
    return body + "\n", EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


COMMANDS = {"emit": cmd_emit, "verify": cmd_verify, "h1": cmd_h1, "liftable": cmd_liftable,
            "lemmas": cmd_lemmas, "report": cmd_report}


def main(argv: Optional[List[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        body, status = COMMANDS[args.command](args)
    except (UsageError, WordSyntaxError, OddSize, presentations.InvalidK,
            cover.InvalidParams, ValueError, KeyError) as err:
        sys.stderr.write(f"smodpres: {err}\n")
        return EXIT_USAGE
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    return status


if __name__ == "__main__":
    sys.exit(main())
