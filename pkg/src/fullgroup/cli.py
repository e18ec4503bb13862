"""``fullgroup`` command line front end.

Every subcommand builds a :class:`Report` and prints it as text or JSON.
Exit status: 0 when every check passed, 1 when a check failed, 2 on an
error (the error code is printed, and included in JSON output).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import examples as ex
from .bratteli import BratteliDiagram, alternating_gen_check, mod2_dimension_group
from .config import Caps, LoadedConfig, load_config_file
from .dsl import Environment, parse_clopen, parse_element, run_identities
from .element import FullGroupElement, order
from .errors import FullGroupError
from .ktheory import K0Presentation, add_mod2, decompose, sgn
from .measure import index, measure
from .report import FAIL, PASS, SCHEMA_VERSION, Check, Report
from .subshift import format_cylinder


@dataclass
class Session:
    config: LoadedConfig
    caps: Caps
    seed: int
    fmt: str

    @property
    def system(self):
        if self.config.system is None:
            raise FullGroupError("the configuration defines no subshift")
        return self.config.system


def _default_config() -> LoadedConfig:
    return LoadedConfig(ex.example2_system(), None, Caps(), "built-in Sturmian shift, alpha = sqrt(2)-1")


def element_record(g: FullGroupElement) -> dict:
    return {format_cylinder(w, -g.L): v for w, v in sorted(g.code.items()) if v}


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_words(s: Session, a) -> Report:
    words = list(s.system.words(a.n))
    rep = Report(f"words of length {a.n} in {s.system.name}")
    rep.values["count"] = len(words)
    rep.values["words"] = words
    return rep


def cmd_measure(s: Session, a) -> Report:
    A = parse_clopen(a.clopen, s.system)
    rep = Report(f"measure of {A}")
    rep.values["measure"] = measure(A)
    return rep


def cmd_index(s: Session, a) -> Report:
    g = parse_element(a.element, s.system)
    rep = Report(f"index of {a.element}")
    rep.values["index"] = index(g)
    return rep


def cmd_order(s: Session, a) -> Report:
    g = parse_element(a.element, s.system)
    rep = Report(f"order of {a.element}")
    o = order(g, s.caps.order)
    rep.values["order"] = o if o else str(o)
    return rep


def cmd_sgn(s: Session, a) -> Report:
    g = parse_element(a.element, s.system)
    pres = K0Presentation.for_system(s.system)
    val = sgn(g, pres, span_cap=s.caps.span, cap=s.caps.order, pi=a.pi, policy=a.policy)
    rep = Report(f"signature of {a.element}")
    rep.values["sgn"] = list(val)
    rep.values["basis"] = list(pres.basis)
    rep.values["rendered"] = pres.format_class(val)
    return rep


def cmd_class(s: Session, a) -> Report:
    A = parse_clopen(a.clopen, s.system)
    pres = K0Presentation.for_system(s.system)
    rep = Report(f"K0 class of {A}")
    rep.values["measure"] = measure(A)
    rep.values["class"] = list(pres.class_of(A))
    rep.values["class_mod2"] = list(pres.class_mod2(A))
    rep.values["basis"] = list(pres.basis)
    rep.values["2-divisible"] = pres.is_2divisible(A)
    return rep


def cmd_decompose(s: Session, a) -> Report:
    g = parse_element(a.element, s.system)
    d = decompose(g, pi=a.pi, span_cap=s.caps.span)
    rep = Report(f"decomposition of {a.element}")
    rep.values.update({"A": d.A, "B": d.B, "pi": d.pi, "U": str(d.U) if d.U is not None else None,
                       "radius": d.radius, "gamma1": element_record(d.gamma1),
                       "gamma2": element_record(d.gamma2)})
    for k, ok in d.checks.items():
        rep.add(Check(k, "two-point decomposition", PASS if ok else FAIL))
    for nm, part in (("gamma1", d.gamma1), ("gamma2", d.gamma2)):
        o = order(part, s.caps.order)
        rep.values[f"order({nm})"] = o if o else str(o)
        rep.add(Check(f"{nm} has finite order", "two-point decomposition", PASS if o else FAIL))
    return rep


def cmd_verify(s: Session, a) -> Report:
    try:
        with open(a.file) as fh:
            text = fh.read()
    except OSError as exc:
        raise FullGroupError(f"cannot read {a.file}: {exc}") from exc
    return run_identities(text, Environment(s.system), title=f"identities from {a.file}")


def cmd_bratteli(s: Session, a) -> Report:
    B = s.config.diagram
    if a.example:
        B = ex.example1_diagram() if a.example == "1" else BratteliDiagram(top=[1, 1], stationary=[[1, 0], [0, 1]])
    if B is None:
        raise FullGroupError("no diagram: give --example or a config with a bratteli section")
    depth = min(a.levels, s.caps.depth)
    rep = Report("Bratteli diagram report")
    rep.values["heights"] = [B.heights(n) for n in range(depth + 1)]
    rep.values["simple"] = B.is_simple(s.caps.depth)
    lim = mod2_dimension_group(B, s.caps.depth)
    rep.values["mod2_dimension"] = lim.dimension
    rep.values["mod2_group"] = "0" if lim.dimension == 0 else " + ".join(["Z2"] * lim.dimension)
    rep.add(Check("mod-2 limit certified", "dimension group", PASS if lim.certified else FAIL))
    return rep


def cmd_examples(s: Session, a) -> Report:
    if a.which == "1":
        rep = ex.verify_example1()
        rep.extend(ex.example1_bratteli_report())
        return rep
    if a.which == "2":
        sys_ = ex.example2_system(a.alpha)
        rep = ex.verify_example2(sys_)
        if a.samples:
            rep.extend(_signature_samples(sys_, a.samples, s.seed))
        return rep
    rep = Report("consecutive 3-cycles generate A_n")
    for n in range(3, 8):
        rep.add(Check(f"A_{n}", "alternating generators", PASS if alternating_gen_check(n) else FAIL))
    return rep


def _signature_samples(system, count: int, seed: int) -> Report:
    """``sgn(phi_U phi_V^-1) = [1_U] + [1_V]`` on random cylinder pairs."""
    from .generators import phi_u
    rng = random.Random(seed)
    pres = K0Presentation.for_system(system)
    rep = Report(f"signature of phi_U phi_V^-1 on {count} random cylinder pairs (seed {seed})")
    for _ in range(count):
        cyl = []
        for _ in range(2):
            n = rng.randint(1, 4)
            w = rng.choice(system.words(n))
            cyl.append(system.cylinder(w, rng.randint(-n, 1)))
        U, V = cyl
        g = phi_u(U) * phi_u(V).inverse()
        got = sgn(g, pres)
        want = add_mod2(pres.class_mod2(U), pres.class_mod2(V))
        rep.add(Check(f"U={U}, V={V}", "signature of first-return maps", PASS if got == want else FAIL,
                      witness={"sgn": list(got), "expected": list(want)}))
    return rep


COMMANDS = {
    "words": cmd_words, "measure": cmd_measure, "index": cmd_index, "order": cmd_order,
    "sgn": cmd_sgn, "class": cmd_class, "decompose": cmd_decompose, "verify": cmd_verify,
    "bratteli": cmd_bratteli, "examples": cmd_examples,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fullgroup", description="Computations in topological full groups of subshifts.")
    p.add_argument("--config", help="YAML system configuration (default: Sturmian shift with alpha = sqrt(2)-1)")
    p.add_argument("--seed", type=int, default=0, help="seed for random sampling")
    p.add_argument("--cap-order", type=int, help="largest period searched by order computations")
    p.add_argument("--cap-span", type=int, help="largest neighbourhood radius searched by decompose")
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True)
    sp = sub.add_parser("words", help="legal words of a given length")
    sp.add_argument("n", type=int)
    for name in ("measure", "class"):
        sp = sub.add_parser(name, help=f"{name} of a clopen expression")
        sp.add_argument("clopen")
    for name in ("index", "order", "sgn", "decompose"):
        sp = sub.add_parser(name, help=f"{name} of an element expression")
        sp.add_argument("element")
        if name in ("sgn", "decompose"):
            sp.add_argument("--pi", choices=("order", "reversed"), default="order")
        if name == "sgn":
            sp.add_argument("--policy", choices=("lex", "leftmost", "rightmost"), default="lex")
    sp = sub.add_parser("verify", help="check an identity file")
    sp.add_argument("file")
    sp = sub.add_parser("bratteli", help="report on a Bratteli diagram")
    sp.add_argument("--example", choices=("1", "identity"), help="built-in diagram instead of the config")
    sp.add_argument("--levels", type=int, default=6, help="levels of heights to print")
    sp = sub.add_parser("examples", help="run a bundled verification suite")
    sp.add_argument("--which", choices=("1", "2", "alternating"), required=True)
    sp.add_argument("--alpha", default="sqrt(2)-1", help="rotation number for --which 2")
    sp.add_argument("--samples", type=int, default=0, help="random signature checks for --which 2")
    return p


def _emit(obj: dict | Report, fmt: str, out) -> None:
    if isinstance(obj, Report):
        out.write((obj.to_json() if fmt == "json" else obj.to_text()) + "\n")
    else:
        out.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        config = load_config_file(args.config) if args.config else _default_config()
        caps = Caps(order=args.cap_order or config.caps.order, span=args.cap_span or config.caps.span,
                    depth=config.caps.depth)
        session = Session(config, caps, args.seed, args.format)
        rep = COMMANDS[args.command](session, args)
    except (FullGroupError, ValueError) as exc:
        code = getattr(exc, "code", "invalid_argument")
        err = {"code": code, "message": str(exc)}
        if getattr(exc, "position", None) is not None:
            err["position"] = exc.position
        if args.format == "json":
            _emit({"schema_version": SCHEMA_VERSION, "ok": False, "error": err}, "json", out)
        else:
            out.write(f"error [{code}]: {exc}\n")
        return 2
    _emit(rep, args.format, out)
    return 0 if rep.ok else 1


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_entry()
