"""Command-line surface: class listings, relation classification, morphism
images, bounded conjecture searches, and verification suites.

Outputs are deterministic for a fixed invocation; JSON is emitted with
sorted keys so repeated runs are byte-identical (wall-clock runtimes only
appear in text output).  Exit codes: 0 success, 2 property failure with a
witness, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
import time
from collections import defaultdict

from . import bialgebra, characters, qsym, relations, scans
from .words import (
    all_words,
    eval_hecke_word,
    format_word,
    is_packed,
    parse_word,
    rsk_insert,
)

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 2
EXIT_RESOURCE_CAP = 3

EXTENDED_CLASS_LIMIT = 7  # lengths above this require --extended


def resolve_relation(spec: str) -> relations.RelationPresentation:
    """A builtin name, a ``coxeter-gapN`` shorthand, or a JSON file path."""
    if spec in relations.BUILTIN_NAMES:
        return relations.builtin_relation(spec)
    match = re.fullmatch(r"coxeter-gap(\d+)", spec)
    if match:
        gap = int(match.group(1))
        return relations.coxeter_relation(
            relations.gap_braid_m(gap), name=spec
        )
    if os.path.exists(spec):
        with open(spec) as fh:
            return relation_from_json(json.load(fh))
    raise SystemExit(f"unknown relation {spec!r} (not a builtin, shorthand, or file)")


def relation_from_json(data: dict) -> relations.RelationPresentation:
    if isinstance(data, str):
        return resolve_relation(data)
    name = data.get("name", "custom")
    if data.get("builtin"):
        return relations.builtin_relation(data["builtin"])
    if data.get("coxeter_m") is not None:
        spec = data["coxeter_m"]
        default = spec.get("default", 2)
        default = None if default == "inf" else default
        overrides = tuple(
            (i, j, (None if m == "inf" else m))
            for i, j, m in spec.get("overrides", ())
        )
        return relations.coxeter_relation(
            relations.CoxeterM(default=default, overrides=overrides), name=name
        )
    union = tuple(relation_from_json(sub) for sub in data.get("union_of", ()))
    gens = tuple(
        (parse_word(v), parse_word(w)) for v, w in data.get("generators", ())
    )
    return relations.RelationPresentation(
        name=name,
        generators=gens,
        union_of=union,
        uniform=bool(data.get("uniform", False)),
    )


def emit(payload: dict, fmt: str, runtime: float | None = None) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, default=_jsonable))
    elif fmt == "csv":
        rows = payload.get("rows", [])
        if rows:
            header = list(rows[0])
            print(",".join(header))
            for row in rows:
                print(",".join(str(row[k]) for k in header))
    else:
        _emit_text(payload)
        if runtime is not None:
            print(f"runtime: {runtime:.2f}s")


def _jsonable(x):
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    if isinstance(x, tuple):
        return list(x)
    raise TypeError(f"not JSON-serializable: {type(x)}")


def _emit_text(payload: dict, indent: str = "") -> None:
    for key, value in payload.items():
        if isinstance(value, dict):
            print(f"{indent}{key}:")
            _emit_text(value, indent + "  ")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"{indent}{key}:")
            for item in value:
                _emit_text(item, indent + "  ")
                print()
        else:
            print(f"{indent}{key}: {value}")


def _cache_key(payload: dict) -> str:
    canon = json.dumps(payload, sort_keys=True, default=_jsonable)
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


class ContentCache:
    """Append-only jsonl cache so interrupted extended runs lose nothing."""

    def __init__(self, cache_dir: str | None, signature: dict):
        self.path = None
        self.done: dict = {}
        if cache_dir:
            os.makedirs(cache_dir, exist_ok=True)
            self.path = os.path.join(
                cache_dir, f"scan-{_cache_key(signature)}.jsonl"
            )
            if os.path.exists(self.path):
                with open(self.path) as fh:
                    for line in fh:
                        row = json.loads(line)
                        self.done[tuple(row["content"])] = row

    def record(self, content, payload: dict) -> None:
        if self.path is None:
            return
        row = {"content": list(content), **payload}
        with open(self.path, "a") as fh:
            fh.write(json.dumps(row, sort_keys=True, default=_jsonable) + "\n")


# --- subcommands ------------------------------------------------------------


def cmd_classes(args) -> int:
    pres = resolve_relation(args.relation)
    lengths = list(range(args.max_len + 1))
    if args.max_len > EXTENDED_CLASS_LIMIT and not args.extended:
        print(
            f"lengths above {EXTENDED_CLASS_LIMIT} need --extended "
            "(minutes-scale run)",
            file=sys.stderr,
        )
        return EXIT_RESOURCE_CAP
    t0 = time.time()
    per_length = []
    if pres.homogeneous and pres.content_preserving and pres.builtin:
        for n in lengths:
            cache = ContentCache(
                args.cache_dir if n > EXTENDED_CLASS_LIMIT else None,
                {"command": "classes", "relation": pres.name, "length": n},
            )
            classes, words = scans.packed_class_count(
                pres.builtin,
                n,
                jobs=args.jobs,
                progress=lambda content, c, w, cache=cache: cache.record(
                    content, {"classes": c, "words": w}
                ),
                skip_contents=set(cache.done),
            )
            classes += sum(r["classes"] for r in cache.done.values())
            words += sum(r["words"] for r in cache.done.values())
            per_length.append(
                {"length": n, "packed_words": words, "classes": classes}
            )
    else:
        try:
            inst = relations.close(
                pres, args.alphabet or args.max_len, args.max_len,
                args.headroom, cap=args.cap,
            )
        except relations.ResourceCapError as err:
            print(str(err), file=sys.stderr)
            return EXIT_RESOURCE_CAP
        for n in lengths:
            classes = inst.packed_classes(n)
            words = sum(1 for w in inst.words if len(w) == n and is_packed(w))
            per_length.append(
                {
                    "length": n,
                    "packed_words": words,
                    "classes": len(classes),
                    "representatives": [format_word(c[0]) for c in classes[:50]],
                }
            )
    payload = {
        "relation": pres.name,
        "lengths": per_length,
        "class_counts": [row["classes"] for row in per_length],
    }
    if args.format == "csv":
        payload["rows"] = [
            {"length": r["length"], "packed_words": r["packed_words"], "classes": r["classes"]}
            for r in per_length
        ]
    emit(payload, args.format, time.time() - t0)
    return EXIT_OK


def cmd_check(args) -> int:
    pres = resolve_relation(args.relation)
    t0 = time.time()
    try:
        inst = relations.close(
            pres, args.alphabet, args.max_len, args.headroom, cap=args.cap
        )
    except relations.ResourceCapError as err:
        print(str(err), file=sys.stderr)
        return EXIT_RESOURCE_CAP
    stability = relations.headroom_stability(inst)
    alg = relations.check_algebraic(inst)
    uni = relations.check_uniformly_algebraic(inst)
    palg = relations.check_p_algebraic(inst, prime=args.prime)
    ftype = relations.is_finite_type_bounded(inst)
    payload = {
        "relation": pres.name,
        "bounds": {
            "alphabet": args.alphabet,
            "max_len": args.max_len,
            "headroom": inst.headroom,
        },
        "headroom_stable": stability["stable"],
        "homogeneous": relations.is_homogeneous_observed(inst),
        "algebraic": alg,
        "uniformly_algebraic": uni,
        "p_algebraic": palg,
        "finite_type_certificate": ftype,
    }
    emit(payload, args.format, time.time() - t0)
    return EXIT_OK


def cmd_psi(args) -> int:
    char = characters.parse_character(args.character)
    t0 = time.time()
    if args.class_of:
        seed = parse_word(args.class_of)
        pres = resolve_relation(args.relation)
        degree = args.degree or (len(seed) + 2)
        headroom = args.headroom if args.headroom is not None else (
            0 if pres.homogeneous else 2
        )
        members = relations.bfs_class(pres, seed, degree + headroom)
        stable = relations.bfs_class(pres, seed, degree + headroom + 1)
        sliced = [w for w in stable if len(w) <= degree]
        if sliced != [w for w in members if len(w) <= degree]:
            print("unstable truncation: raise --headroom", file=sys.stderr)
            return EXIT_PROPERTY_FAILURE
        image = characters.class_image(members, char, degree)
        source = {
            "class_of": format_word(seed),
            "relation": pres.name,
            "members_within_degree": sum(1 for w in members if len(w) <= degree),
        }
    else:
        w = parse_word(args.word)
        degree = args.degree or len(w)
        image = characters.word_image(w, char, degree)
        source = {"word": format_word(w)}
    payload = {
        **source,
        "character": characters.format_character(char),
        "degree": degree,
        "monomial": qsym.qsym_to_json(image),
        "fundamental": [
            {"comp": list(a), "coeff": qsym.format_scalar(c)}
            for a, c in sorted(qsym.to_fundamental(image).items())
        ],
    }
    if qsym.is_symmetric(image):
        payload["monomial_sym"] = qsym.sym_expansion_to_json(
            qsym.to_monomial_sym(image)
        )
        cert = qsym.schur_positive(image)
        payload["schur"] = qsym.sym_expansion_to_json(cert.expansion)
        payload["schur_positive"] = cert.nonnegative
        try:
            qcert = qsym.schur_q_positive(image)
            payload["schur_q"] = qsym.sym_expansion_to_json(qcert.expansion)
            payload["schur_q_positive"] = qcert.nonnegative
        except ValueError:
            payload["schur_q"] = None
    else:
        payload["symmetric"] = False
    emit(payload, args.format, time.time() - t0)
    return EXIT_OK


def cmd_conjectures(args) -> int:
    t0 = time.time()
    if args.which in ("weak-hecke", "buch-samuel"):
        base = "hecke" if args.which == "weak-hecke" else "k-knuth"
        report = scans.doubling_check(base, args.alphabet, args.max_len)
        report["which"] = args.which
        emit(report, args.format, time.time() - t0)
        if report["mismatches"]:
            return EXIT_PROPERTY_FAILURE
        return EXIT_OK
    if args.which in ("exotic-sym", "exotic-schur-positive"):
        if args.max_len > EXTENDED_CLASS_LIMIT and not args.extended:
            print("lengths above 7 need --extended", file=sys.stderr)
            return EXIT_RESOURCE_CAP
        want_csv = args.format == "csv"
        bases = ("s", "Q") if want_csv else (
            ("Q",) if args.which == "exotic-sym" else ("s",)
        )
        signature = {
            "command": "conjectures",
            "which": args.which,
            "bases": list(bases),
            "max_len": args.max_len,
        }
        cache = ContentCache(args.cache_dir, signature)
        reports = []
        rows: list[dict] = []
        for n in range(args.max_len + 1):
            use_cache = cache.path is not None and n == args.max_len
            skip = set(cache.done) if use_cache else set()

            def progress(content, verdicts, use_cache=use_cache):
                if use_cache:
                    cache.record(content, {"verdicts": verdicts})

            rep = scans.positivity_scan_homogeneous(
                "exotic-knuth", n, ("gt", "le"), bases,
                jobs=args.jobs, progress=progress, skip_contents=skip,
                detail=want_csv,
            )
            if use_cache and skip:
                for row in cache.done.values():
                    for verdict in row["verdicts"]:
                        rep["total_classes"] += 1
                        if verdict["symmetric"]:
                            rep["symmetric"] += 1
                            if all(verdict["positive"].values()):
                                rep["positive"] += 1
                            else:
                                rep["non_positive"].append(verdict["representative"])
                        else:
                            rep["non_symmetric"].append(verdict["representative"])
                        if want_csv:
                            rep.setdefault("classes", []).append(verdict)
                rep["non_positive"].sort()
                rep["non_symmetric"].sort()
            if want_csv:
                for v in rep.pop("classes", []):
                    rows.append(
                        {
                            "class_repr": v["representative"],
                            "class_size": v["size"],
                            "degree": n,
                            "symmetric": v["symmetric"],
                            "schur_positive": v["positive"].get("s"),
                            "schurQ_positive": v["positive"].get("Q"),
                        }
                    )
            reports.append(rep)
        payload = {
            "which": args.which,
            "per_length": reports,
            "all_symmetric": all(not r["non_symmetric"] for r in reports),
        }
        if args.which == "exotic-schur-positive":
            payload["all_schur_positive"] = all(
                not r["non_positive"] for r in reports
            )
        if want_csv:
            payload["rows"] = sorted(
                rows, key=lambda r: (r["degree"], r["class_repr"])
            )
        emit(payload, args.format, time.time() - t0)
        if payload["all_symmetric"] is False:
            return EXIT_PROPERTY_FAILURE
        return EXIT_OK
    raise SystemExit(f"unknown conjecture target {args.which!r}")


def cmd_verify(args) -> int:
    t0 = time.time()
    failures = 0
    reports: list[dict] = []

    def note(report: dict) -> None:
        nonlocal failures
        reports.append(report)
        if report.get("status") not in ("pass", "bounded-evidence"):
            failures += 1

    if args.suite == "axioms":
        for rep in bialgebra.verify_bialgebra_axioms("anchored", 4, 2):
            note(rep)
        for rep in bialgebra.verify_bialgebra_axioms("packed", 4):
            note(rep)
    elif args.suite == "duality":
        note(bialgebra.duality_pairing_check(4, 3))
    elif args.suite == "oracles":
        inst = relations.close(relations.builtin_relation("knuth"), 3, 6)
        fibers = defaultdict(set)
        for w in all_words(3, 6):
            fibers[rsk_insert(w)].add(w)
        ok = {frozenset(c) for c in inst.iter_classes()} == {
            frozenset(v) for v in fibers.values()
        }
        note({"axiom": "knuth-insertion-fibers", "status": "pass" if ok else "fail"})
        inst = relations.close(relations.builtin_relation("hecke"), 3, 6)
        fibers = defaultdict(set)
        for w in all_words(3, 6):
            fibers[eval_hecke_word(w, 3)].add(w)
        ok = {frozenset(c) for c in inst.iter_classes()} == {
            frozenset(v) for v in fibers.values()
        }
        note({"axiom": "hecke-evaluation-fibers", "status": "pass" if ok else "fail"})
    elif args.suite == "identities":
        for n in range(1, 7):
            ok = characters.nsym_generator_image(n, "le") == qsym.homogeneous_h(n)
            note({"axiom": f"h-image-{n}", "status": "pass" if ok else "fail"})
            ok = characters.nsym_generator_image(n, ("gt", "le")) == qsym.q_function(n)
            note({"axiom": f"q-image-{n}", "status": "pass" if ok else "fail"})
        for lam in [(1,), (2,), (1, 1), (2, 1)]:
            fam = characters.grassmannian_stable_family(lam, sum(lam) + 2)
            ok = fam["J"].homogeneous(sum(lam)) == qsym.schur(lam, sum(lam))
            note({"axiom": f"stable-bottom-{lam}", "status": "pass" if ok else "fail"})
    else:
        raise SystemExit(f"unknown suite {args.suite!r}")

    payload = {
        "suite": args.suite,
        "checks": reports,
        "failures": failures,
    }
    emit(payload, args.format, time.time() - t0)
    return EXIT_PROPERTY_FAILURE if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wordbialg",
        description="word bialgebras, word relations, and their "
        "quasi-symmetric images (exact arithmetic)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, relation_default=None):
        p.add_argument("--relation", default=relation_default)
        p.add_argument("--alphabet", type=int, default=3)
        p.add_argument("--max-len", type=int, default=6)
        p.add_argument("--headroom", type=int, default=None)
        p.add_argument("--cap", type=int, default=2_000_000)
        p.add_argument("--degree", type=int, default=None)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--cache-dir", default=None)
        p.add_argument("--extended", action="store_true")
        p.add_argument(
            "--format", choices=("json", "text", "csv"), default="text"
        )

    p = sub.add_parser("classes", help="packed-word class counts per length")
    common(p, relation_default="exotic-knuth")
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("check", help="classify a relation at bounded scale")
    common(p)
    p.add_argument("--prime", type=int, default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("psi", help="morphism image of a word or class")
    common(p, relation_default="knuth")
    p.add_argument("--word", default=None)
    p.add_argument("--class-of", default=None)
    p.add_argument("--character", default="le")
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("conjectures", help="bounded conjecture searches")
    common(p)
    p.add_argument(
        "--which",
        required=True,
        choices=(
            "weak-hecke",
            "buch-samuel",
            "exotic-sym",
            "exotic-schur-positive",
        ),
    )
    p.set_defaults(func=cmd_conjectures)

    p = sub.add_parser("verify", help="run a registered verification suite")
    common(p)
    p.add_argument(
        "--suite",
        required=True,
        choices=("axioms", "duality", "oracles", "identities"),
    )
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "psi" and not (args.word or args.class_of):
        print("psi needs --word or --class-of", file=sys.stderr)
        return EXIT_PROPERTY_FAILURE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
