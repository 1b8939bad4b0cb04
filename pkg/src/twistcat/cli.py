"""Command-line front end: config ingestion, command dispatch, reporting.

A session is described by a single JSON document that declares named
entities (groups, G-sets, cochains, fusion data, module and bimodule
categories, functors) which reference each other by id.  Commands operate
on those entities and print either an aligned text table or a JSON
document; all output is deterministic for a fixed config and flags.

Exit codes: 0 success, 1 validation or relation failure, 2 usage or
parse errors.
"""

from __future__ import annotations

import functools
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import click
import numpy as np

from .errors import (NoTrace, NotCocycle, ParseError, TwistcatError,
                     ValidationError)
from .scalar import Scalar, Unit
from .algebra import (FiniteGroup, GSet, Subgroup, coset_gset, cyclic_group,
                      direct_product, disjoint_union_gset, point_gset,
                      product_embeddings, regular_gset, restrict_gset)
from .cohomology import UnitCochain, deligne_omega, differential, omega_cyclic
from .fusion import FusionData, spherical_structures
from .modcat import (BimoduleCategoryData, ModuleCategoryData,
                     _product_kappa, bimod_to_deligne, bimodule_trace,
                     classify_indecomposable, deligne_to_bimod,
                     equivalent_modcats, make_modcat, modcats_for,
                     module_trace, regular_module_category, validate_bimodcat,
                     validate_modcat)
from .modfun import (BimoduleFunctorData, ModuleFunctorData, adjoint,
                     action_functor, bimodfun_to_deligne,
                     classify_simple_cyclic, count_simple_cyclic,
                     deligne_to_bimodfun, functor_from_equivariant,
                     identity_functor, validate_bimodfun, validate_modfun)
from .sixj import (
    KINDS as SIXJ_KINDS,
    bimodule_context,
    functor_context,
    fusion_context,
    sixj_table as sixj_table_rows,
    verify_biedenharn_elliott,
    verify_orthogonality,
)
from ._matrix import SMatrix

__all__ = ["SessionConfig", "parse_config", "main"]


# ---------------------------------------------------------------------------
# session configuration
# ---------------------------------------------------------------------------

@dataclass
class SessionConfig:
    """All named entities of one session, fully constructed and validated."""

    root_order: int = 1
    groups: dict = field(default_factory=dict)
    gsets: dict = field(default_factory=dict)
    cochains: dict = field(default_factory=dict)
    fusions: dict = field(default_factory=dict)
    modcats: dict = field(default_factory=dict)
    bimodcats: dict = field(default_factory=dict)
    functors: dict = field(default_factory=dict)


def _require(mapping: dict, key: str, section: str, entity: str):
    if key not in mapping:
        raise ParseError(
            f"entity {entity!r} references undefined {section} id {key!r}")
    return mapping[key]


def _field(spec: dict, name: str, entity: str):
    if name not in spec:
        raise ParseError(f"entity {entity!r} is missing field {name!r}")
    return spec[name]


def _spec_type(spec, entity: str, allowed: tuple[str, ...]) -> str:
    if not isinstance(spec, dict):
        raise ParseError(f"entity {entity!r} must be a JSON object")
    kind = spec.get("type")
    if kind not in allowed:
        raise ParseError(
            f"entity {entity!r} has unknown type {kind!r} "
            f"(expected one of {', '.join(allowed)})")
    return kind


def _wrap_build(entity: str, fn, *args, **kwargs):
    """Run a constructor; non-domain errors become ValidationError."""
    try:
        return fn(*args, **kwargs)
    except (ParseError, TwistcatError):
        raise
    except ValueError as exc:
        raise ValidationError(f"entity {entity!r}: {exc}") from exc


def _build_group(name: str, spec: dict, groups: dict) -> FiniteGroup:
    kind = _spec_type(spec, name, ("cyclic", "table", "product"))
    if kind == "cyclic":
        return _wrap_build(name, cyclic_group, int(_field(spec, "n", name)))
    if kind == "table":
        return _wrap_build(name, FiniteGroup, _field(spec, "table", name))
    left = _require(groups, _field(spec, "left", name), "group", name)
    right = _require(groups, _field(spec, "right", name), "group", name)
    return _wrap_build(name, direct_product, left, right)


def _check_subgroup(grp: FiniteGroup, elements, entity: str) -> Subgroup:
    els = tuple(sorted(int(v) for v in elements))
    members = set(els)
    if grp.identity not in members:
        raise ValidationError(f"entity {entity!r}: subgroup misses identity")
    for a in els:
        if not 0 <= a < grp.order:
            raise ValidationError(f"entity {entity!r}: element {a} out of range")
        if grp.inv(a) not in members:
            raise ValidationError(f"entity {entity!r}: not inverse-closed")
        for b in els:
            if grp.op(a, b) not in members:
                raise ValidationError(f"entity {entity!r}: not closed under product")
    return Subgroup(grp, els)


def _build_gset(name: str, spec: dict, cfg: SessionConfig) -> GSet:
    kind = _spec_type(spec, name, ("point", "regular", "cosets", "table",
                                   "union"))
    if kind == "union":
        parts = [_require(cfg.gsets, p, "gset", name)
                 for p in _field(spec, "parts", name)]
        if not parts:
            raise ParseError(f"entity {name!r}: union needs at least one part")
        out = parts[0]
        for nxt in parts[1:]:
            out = _wrap_build(name, disjoint_union_gset, out, nxt)
        return out
    grp = _require(cfg.groups, _field(spec, "group", name), "group", name)
    if kind == "point":
        return point_gset(grp)
    if kind == "regular":
        return regular_gset(grp)
    if kind == "cosets":
        sub = _check_subgroup(grp, _field(spec, "subgroup", name), name)
        return _wrap_build(name, coset_gset, grp, sub)
    return _wrap_build(name, GSet, grp, _field(spec, "action", name))


def _build_table_cochain(name: str, spec: dict, degree: int, carrier: GSet,
                         slot_groups=None) -> UnitCochain:
    root = int(_field(spec, "root_order", name))
    groups = slot_groups or (carrier.group,) * degree
    shape = tuple(g.order for g in groups) + (carrier.size,)
    flat = _field(spec, "exponents", name)
    want = int(np.prod(shape))
    if len(flat) != want:
        raise ValidationError(
            f"entity {name!r}: exponent table has {len(flat)} entries, "
            f"expected {want} (lexicographic argument order)")
    exps = np.array([int(v) for v in flat], dtype=np.int64).reshape(shape)
    return _wrap_build(name, UnitCochain, degree, carrier, root, exps,
                       slot_groups=slot_groups)


def _build_cochain(name: str, spec: dict, cfg: SessionConfig) -> UnitCochain:
    kind = _spec_type(spec, name, ("trivial", "cyclic_rep", "table"))
    if kind == "cyclic_rep":
        grp = _require(cfg.groups, _field(spec, "group", name), "group", name)
        omega = _wrap_build(name, omega_cyclic, grp.order,
                            int(_field(spec, "s", name)))
        if omega.group != grp:
            raise ValidationError(
                f"entity {name!r}: group is not cyclic in the standard "
                f"presentation")
        return omega
    degree = int(_field(spec, "degree", name))
    if "carrier" in spec:
        carrier = _require(cfg.gsets, spec["carrier"], "gset", name)
    else:
        grp = _require(cfg.groups, _field(spec, "group", name), "group", name)
        carrier = point_gset(grp)
    slots = None
    if "slots" in spec:
        slots = tuple(_require(cfg.groups, g, "group", name)
                      for g in spec["slots"])
    if kind == "trivial":
        root = int(_field(spec, "root_order", name))
        return UnitCochain.trivial(degree, carrier, root, slot_groups=slots)
    return _build_table_cochain(name, spec, degree, carrier, slot_groups=slots)


def _trivial_kappa(grp: FiniteGroup) -> UnitCochain:
    return UnitCochain.trivial(1, point_gset(grp), 1)


def _build_fusion(name: str, spec: dict, cfg: SessionConfig) -> FusionData:
    if not isinstance(spec, dict):
        raise ParseError(f"entity {name!r} must be a JSON object")
    if "left" in spec or "right" in spec:
        left = _require(cfg.fusions, _field(spec, "left", name),
                        "fusion", name)
        right = _require(cfg.fusions, _field(spec, "right", name),
                         "fusion", name)
        prod = direct_product(left.group, right.group)
        return _wrap_build(name, FusionData, prod,
                           deligne_omega(left.omega, right.omega),
                           _product_kappa(left, right))
    grp = _require(cfg.groups, _field(spec, "group", name), "group", name)
    omega = _require(cfg.cochains, _field(spec, "omega", name), "cochain", name)
    if omega.degree == 3 and omega.carrier.size == 1:
        bad = np.argwhere(differential(omega).exponents)
        if len(bad):
            raise NotCocycle(
                f"entity {name!r}: omega is not a 3-cocycle; first failing "
                f"tuple (g, h, k, l) = {tuple(int(v) for v in bad[0][:4])}")
    if "kappa" in spec:
        kappa = _require(cfg.cochains, spec["kappa"], "cochain", name)
    else:
        kappa = _trivial_kappa(grp)
    return _wrap_build(name, FusionData, grp, omega, kappa)


def _build_psi(name: str, spec: dict, fusion: FusionData, x: GSet,
               cfg: SessionConfig) -> ModuleCategoryData:
    kind = _spec_type(spec, name, ("trivial", "table", "regular", "solve",
                                   "ref"))
    if kind == "regular":
        data = regular_module_category(fusion)
        if data.X != x:
            raise ValidationError(
                f"entity {name!r}: carrier is not the regular G-set")
        return data
    if kind == "solve":
        found = modcats_for(fusion, x)
        if not found:
            raise ValidationError(
                f"entity {name!r}: no module structure exists on this carrier")
        index = int(spec.get("index", 0))
        if not 0 <= index < len(found):
            raise ValidationError(
                f"entity {name!r}: solver found {len(found)} structures, "
                f"index {index} out of range")
        return found[index]
    if kind == "ref":
        psi = _require(cfg.cochains, _field(spec, "cochain", name),
                       "cochain", name)
    elif kind == "trivial":
        psi = UnitCochain.trivial(2, x, int(_field(spec, "root_order", name)))
    else:
        psi = _build_table_cochain(name, spec, 2, x)
    return _wrap_build(name, make_modcat, fusion, x, psi)


def _build_modcat(name: str, spec: dict, cfg: SessionConfig) -> ModuleCategoryData:
    if not isinstance(spec, dict):
        raise ParseError(f"entity {name!r} must be a JSON object")
    fusion = _require(cfg.fusions, _field(spec, "fusion", name), "fusion", name)
    x = _require(cfg.gsets, _field(spec, "gset", name), "gset", name)
    return _build_psi(name, _field(spec, "psi", name), fusion, x, cfg)


def _build_bimodcat(name: str, spec: dict,
                    cfg: SessionConfig) -> BimoduleCategoryData:
    kind = _spec_type(spec, name, ("explicit", "from_deligne"))
    if kind == "from_deligne":
        modcat = _require(cfg.modcats, _field(spec, "modcat", name),
                          "modcat", name)
        left = _require(cfg.fusions, _field(spec, "left", name), "fusion", name)
        right = _require(cfg.fusions, _field(spec, "right", name),
                         "fusion", name)
        return _wrap_build(name, deligne_to_bimod, modcat, left, right)
    left = _require(cfg.fusions, _field(spec, "left", name), "fusion", name)
    right = _require(cfg.fusions, _field(spec, "right", name), "fusion", name)
    x = _require(cfg.gsets, _field(spec, "gset", name), "gset", name)
    emb_g, emb_h = product_embeddings(left.group, right.group)
    x_g = restrict_gset(x, emb_g, left.group)
    x_h = restrict_gset(x, emb_h, right.group)
    psi = _build_table_cochain(name, _field(spec, "psi", name), 2, x_g)
    phi = _build_table_cochain(name, _field(spec, "phi", name), 2, x_h)
    omid = _build_table_cochain(name, _field(spec, "omega_mid", name), 2, x,
                                slot_groups=(left.group, right.group))
    data = _wrap_build(name, BimoduleCategoryData, left, right, x, psi, phi,
                       omid)
    report = validate_bimodcat(data)
    if not report.ok:
        first = report.failures[0]
        raise ValidationError(
            f"entity {name!r}: {first['condition']} fails at "
            f"{first['tuple']}: {first['lhs']} != {first['rhs']}")
    return data


def _parse_scalar(value, entity: str) -> Scalar:
    if isinstance(value, dict):
        return _wrap_build(entity, Scalar.from_json, value)
    if isinstance(value, (int, str)):
        return Scalar.from_rational(Fraction(str(value)))
    raise ParseError(f"entity {entity!r}: matrix entries must be scalar "
                     f"objects, integers or rational strings")


def _parse_matrix_table(name: str, raw: dict, label: str) -> dict:
    out = {}
    if not isinstance(raw, dict):
        raise ParseError(f"entity {name!r}: {label} table must be an object")
    for key, mat in raw.items():
        parts = key.split(",")
        if len(parts) != 3:
            raise ParseError(
                f"entity {name!r}: {label} key {key!r} is not 'g,x,y'")
        idx = tuple(int(p) for p in parts)
        out[idx] = SMatrix([[_parse_scalar(v, name) for v in row]
                            for row in mat])
    return out


def _report_or_raise(name: str, report) -> None:
    if not report.ok:
        first = report.failures[0]
        raise ValidationError(
            f"entity {name!r}: {first['condition']} fails at "
            f"{first['tuple']}: {first['lhs']} != {first['rhs']}")


def _build_functor(name: str, spec: dict, cfg: SessionConfig):
    kind = _spec_type(spec, name, ("identity", "action", "equivariant",
                                   "explicit", "bimodule_explicit",
                                   "bimodule_from_deligne"))
    if kind == "identity":
        modcat = _require(cfg.modcats, _field(spec, "modcat", name),
                          "modcat", name)
        return identity_functor(modcat)
    if kind == "action":
        modcat = _require(cfg.modcats, _field(spec, "modcat", name),
                          "modcat", name)
        return _wrap_build(name, action_functor, modcat,
                           int(_field(spec, "base", name)))
    if kind == "equivariant":
        source = _require(cfg.modcats, _field(spec, "source", name),
                          "modcat", name)
        target = _require(cfg.modcats, _field(spec, "target", name),
                          "modcat", name)
        f = np.array([int(v) for v in _field(spec, "f", name)], dtype=np.int64)
        lam_spec = _field(spec, "lam", name)
        lkind = _spec_type(lam_spec, name, ("trivial", "table"))
        if lkind == "trivial":
            lam = UnitCochain.trivial(1, target.X,
                                      int(_field(lam_spec, "root_order", name)))
        else:
            lam = _build_table_cochain(name, lam_spec, 1, target.X)
        return _wrap_build(name, functor_from_equivariant, f, lam, source,
                           target)
    if kind == "bimodule_from_deligne":
        inner = _require(cfg.functors, _field(spec, "functor", name),
                         "functor", name)
        if not isinstance(inner, ModuleFunctorData):
            raise ParseError(f"entity {name!r}: referenced functor must be a "
                             f"product-group module functor")
        source = _require(cfg.bimodcats, _field(spec, "source", name),
                          "bimodcat", name)
        target = _require(cfg.bimodcats, _field(spec, "target", name),
                          "bimodcat", name)
        return _wrap_build(name, deligne_to_bimodfun, inner, source, target)
    mult = np.array(_field(spec, "mult", name), dtype=np.int64)
    a = _parse_matrix_table(name, _field(spec, "a", name), "A")
    if kind == "explicit":
        source = _require(cfg.modcats, _field(spec, "source", name),
                          "modcat", name)
        target = _require(cfg.modcats, _field(spec, "target", name),
                          "modcat", name)
        out = _wrap_build(name, ModuleFunctorData, source, target, mult, a)
        _report_or_raise(name, validate_modfun(out))
        return out
    source = _require(cfg.bimodcats, _field(spec, "source", name),
                      "bimodcat", name)
    target = _require(cfg.bimodcats, _field(spec, "target", name),
                      "bimodcat", name)
    b = _parse_matrix_table(name, _field(spec, "b", name), "B")
    out = _wrap_build(name, BimoduleFunctorData, source, target, mult, a, b)
    _report_or_raise(name, validate_bimodfun(out))
    return out


_SECTIONS = ("groups", "gsets", "cochains", "fusions", "modcats",
             "bimodcats", "functors")


def parse_config(path: str) -> SessionConfig:
    """Load and fully validate a session config.

    Raises ParseError for malformed documents and unresolved references,
    ValidationError when a declared table fails its owning validator.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read config {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"config {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("config document must be a JSON object")
    unknown = set(doc) - set(_SECTIONS) - {"root_order"}
    if unknown:
        raise ParseError(
            f"unknown config sections: {', '.join(sorted(unknown))}")
    cfg = SessionConfig(root_order=int(doc.get("root_order", 1)))
    builders = {
        "groups": lambda n, s: _build_group(n, s, cfg.groups),
        "gsets": lambda n, s: _build_gset(n, s, cfg),
        "cochains": lambda n, s: _build_cochain(n, s, cfg),
        "fusions": lambda n, s: _build_fusion(n, s, cfg),
        "modcats": lambda n, s: _build_modcat(n, s, cfg),
        "bimodcats": lambda n, s: _build_bimodcat(n, s, cfg),
        "functors": lambda n, s: _build_functor(n, s, cfg),
    }
    for section in _SECTIONS:
        entries = doc.get(section, {})
        if not isinstance(entries, dict):
            raise ParseError(f"config section {section!r} must be an object")
        for name, spec in entries.items():
            getattr(cfg, section)[name] = builders[section](name, spec)
    return cfg


# ---------------------------------------------------------------------------
# serialization helpers
# ---------------------------------------------------------------------------

def _cochain_json(c: UnitCochain) -> dict:
    return {"degree": c.degree, "root_order": c.root_order,
            "carrier_size": c.carrier.size,
            "exponents": [int(v) for v in c.exponents.ravel()]}


def _json_default(value):
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, Scalar):
        return value.to_json()
    if isinstance(value, Unit):
        return value.to_json()
    if isinstance(value, SMatrix):
        return value.to_json()
    raise TypeError(f"not JSON-serializable: {value!r}")


def _emit(obj: dict, command: str, payload: dict, lines: list[str],
          ok: bool = True) -> None:
    if obj["format"] == "json":
        doc = {"command": command, "seed": obj["seed"], "ok": ok}
        doc.update(payload)
        click.echo(json.dumps(doc, indent=2, default=_json_default))
    else:
        for line in lines:
            click.echo(line)
    if not ok:
        sys.exit(1)


def _guard(fn):
    """Map domain errors to the exit-code contract inside commands."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except click.ClickException:
            raise
        except ParseError as exc:
            click.echo(f"parse error: {exc}", err=True)
            sys.exit(2)
        except TwistcatError as exc:
            click.echo(f"validation error: {exc}", err=True)
            sys.exit(1)
    return wrapper


# ---------------------------------------------------------------------------
# command-line interface
# ---------------------------------------------------------------------------

@click.group()
@click.option("--config", "config_path", required=True,
              type=click.Path(), help="Path to the session config (JSON).")
@click.option("--format", "fmt", type=click.Choice(["table", "json"]),
              default="table", show_default=True, help="Output format.")
@click.option("--seed", type=int, default=0, show_default=True,
              help="Seed for randomized subcommands (reported in output).")
@click.option("--bound", type=int, default=8, show_default=True,
              help="Enumeration bound for searches.")
@click.pass_context
def main(ctx, config_path, fmt, seed, bound):
    """Exact computations with twisted graded categories and their 6j data."""
    try:
        cfg = parse_config(config_path)
    except ParseError as exc:
        click.echo(f"parse error: {exc}", err=True)
        ctx.exit(2)
    except TwistcatError as exc:
        click.echo(f"validation error: {exc}", err=True)
        ctx.exit(1)
    ctx.obj = {"cfg": cfg, "format": fmt, "seed": seed, "bound": bound}


def _resolve(cfg: SessionConfig, section: str, name: str):
    table = getattr(cfg, section)
    if name not in table:
        raise click.UsageError(
            f"no {section[:-1]} named {name!r} in the config "
            f"(have: {', '.join(sorted(table)) or 'none'})")
    return table[name]


@main.command()
@click.pass_obj
@_guard
def validate(obj):
    """Run every validator over every declared entity."""
    cfg = obj["cfg"]
    rows = []
    for name, fus in cfg.fusions.items():
        rows.append({"id": name, "kind": "fusion", "ok": True,
                     "checked": fus.group.order ** 4,
                     "spherical": fus.spherical, "failures": []})
    for name, mc in cfg.modcats.items():
        rep = validate_modcat(mc)
        rows.append({"id": name, "kind": "modcat", "ok": rep.ok,
                     "checked": rep.checked, "failures": rep.failures})
    for name, bc in cfg.bimodcats.items():
        rep = validate_bimodcat(bc)
        rows.append({"id": name, "kind": "bimodcat", "ok": rep.ok,
                     "checked": rep.checked, "failures": rep.failures})
    for name, fn in cfg.functors.items():
        if isinstance(fn, BimoduleFunctorData):
            rep = validate_bimodfun(fn)
            kind = "bimodule functor"
        else:
            rep = validate_modfun(fn)
            kind = "module functor"
        rows.append({"id": name, "kind": kind, "ok": rep.ok,
                     "checked": rep.checked, "failures": rep.failures})
    ok = all(r["ok"] for r in rows)
    lines = [f"{r['id']}: {r['kind']} "
             f"{'ok' if r['ok'] else 'FAILED'} ({r['checked']} checks)"
             for r in rows]
    lines.append(f"{len(rows)} entities, "
                 f"{sum(not r['ok'] for r in rows)} failures")
    _emit(obj, "validate", {"entities": rows}, lines, ok)


@main.command()
@click.pass_obj
@_guard
def spherical(obj):
    """List the spherical structures on each declared fusion datum."""
    cfg = obj["cfg"]
    rows = []
    lines = []
    for name, fus in cfg.fusions.items():
        structures = spherical_structures(fus.group, fus.omega)
        entry = {"id": name, "count": len(structures), "kappas": []}
        lines.append(f"{name}: {len(structures)} spherical structures")
        for st in structures:
            exps = [int(v) for v in st.kappa.exponents.ravel()]
            matches = st.kappa == fus.kappa
            entry["kappas"].append({"root_order": st.kappa.root_order,
                                    "exponents": exps,
                                    "declared": matches})
            mark = " (declared)" if matches else ""
            lines.append(f"  kappa exponents {exps} "
                         f"(root order {st.kappa.root_order}){mark}")
        rows.append(entry)
    _emit(obj, "spherical", {"fusions": rows}, lines)


@main.command("enumerate-modcats")
@click.argument("gset")
@click.option("--fusion", "fusion_id", default=None,
              help="Fusion id (defaults to the unique declared one).")
@click.pass_obj
@_guard
def enumerate_modcats(obj, gset, fusion_id):
    """Enumerate the module structures on a carrier G-set."""
    cfg = obj["cfg"]
    x = _resolve(cfg, "gsets", gset)
    if fusion_id is None:
        if len(cfg.fusions) != 1:
            raise click.UsageError(
                "config declares several fusions; pass --fusion")
        fusion_id, = cfg.fusions
    fus = _resolve(cfg, "fusions", fusion_id)
    found = modcats_for(fus, x)
    rows = [{"index": i, "psi": _cochain_json(mc.psi)}
            for i, mc in enumerate(found)]
    lines = [f"{len(found)} module structures on {gset!r} over {fusion_id!r}"]
    for row in rows:
        lines.append(f"  [{row['index']}] psi exponents "
                     f"{row['psi']['exponents']} "
                     f"(root order {row['psi']['root_order']})")
    _emit(obj, "enumerate-modcats",
          {"gset": gset, "fusion": fusion_id, "count": len(found),
           "structures": rows}, lines)


@main.command()
@click.argument("modcat")
@click.pass_obj
@_guard
def classify(obj, modcat):
    """Classify an indecomposable module category: subgroup and restriction."""
    cfg = obj["cfg"]
    mc = _resolve(cfg, "modcats", modcat)
    cls = classify_indecomposable(mc)
    payload = {
        "modcat": modcat,
        "stabilizer": [int(v) for v in cls.subgroup.elements],
        "conjugacy_class_representative": [int(v)
                                           for v in cls.subgroup_class_rep],
        "restricted_psi": _cochain_json(cls.psi),
    }
    lines = [f"{modcat}: stabilizer {payload['stabilizer']} "
             f"(class representative {payload['conjugacy_class_representative']})",
             f"restricted psi exponents {payload['restricted_psi']['exponents']} "
             f"(root order {payload['restricted_psi']['root_order']})"]
    _emit(obj, "classify", payload, lines)


@main.command()
@click.argument("m1")
@click.argument("m2")
@click.pass_obj
@_guard
def equiv(obj, m1, m2):
    """Decide equivalence of two module categories; print a witness."""
    cfg = obj["cfg"]
    first = _resolve(cfg, "modcats", m1)
    second = _resolve(cfg, "modcats", m2)
    witness = equivalent_modcats(first, second, bound=obj["bound"])
    if witness is None:
        payload = {"m1": m1, "m2": m2, "equivalent": False}
        lines = [f"{m1} and {m2} are not equivalent"]
    else:
        f, mu = witness
        payload = {"m1": m1, "m2": m2, "equivalent": True,
                   "carrier_map": [int(v) for v in f],
                   "mu": _cochain_json(mu)}
        lines = [f"{m1} and {m2} are equivalent",
                 f"carrier map {payload['carrier_map']}",
                 f"mu exponents {payload['mu']['exponents']} "
                 f"(root order {payload['mu']['root_order']})"]
    _emit(obj, "equiv", payload, lines)


@main.command()
@click.argument("modcat")
@click.pass_obj
@_guard
def trace(obj, modcat):
    """Report the module trace of a module or bimodule category."""
    cfg = obj["cfg"]
    if modcat in cfg.modcats:
        tr = module_trace(cfg.modcats[modcat])
    elif modcat in cfg.bimodcats:
        tr = bimodule_trace(cfg.bimodcats[modcat])
    else:
        raise click.UsageError(f"no modcat or bimodcat named {modcat!r}")
    if tr is None:
        _emit(obj, "trace", {"modcat": modcat, "exists": False},
              [f"{modcat}: no module trace exists"])
        return
    units = [u.to_json() for u in tr.values]
    reprs = [repr(u) for u in tr.values]
    _emit(obj, "trace", {"modcat": modcat, "exists": True, "values": units},
          [f"{modcat}: trace exists", f"values {reprs}"])


@main.command()
@click.argument("entity")
@click.option("--inverse", is_flag=True,
              help="Also map back and check the round trip is exact.")
@click.pass_obj
@_guard
def deligne(obj, entity, inverse):
    """Map a bimodule entity to its product-group form (and back)."""
    cfg = obj["cfg"]
    if entity in cfg.bimodcats:
        data = cfg.bimodcats[entity]
        fwd = bimod_to_deligne(data)
        payload = {"entity": entity, "kind": "bimodcat",
                   "product_group_order": fwd.fusion.group.order,
                   "carrier_size": fwd.X.size,
                   "psi": _cochain_json(fwd.psi)}
        lines = [f"{entity}: product-group module category over group of "
                 f"order {payload['product_group_order']}, carrier size "
                 f"{payload['carrier_size']}"]
        if inverse:
            back = deligne_to_bimod(fwd, data.left, data.right)
            exact = back == data
            payload["round_trip_exact"] = exact
            lines.append(f"round trip exact: {exact}")
            _emit(obj, "deligne", payload, lines, ok=exact)
            return
    elif entity in cfg.functors and isinstance(cfg.functors[entity],
                                               BimoduleFunctorData):
        fn = cfg.functors[entity]
        fwd = bimodfun_to_deligne(fn)
        payload = {"entity": entity, "kind": "bimodfun",
                   "product_group_order": fwd.source.fusion.group.order,
                   "support": [[int(x), int(y)] for x, y in fwd.support()]}
        lines = [f"{entity}: product-group module functor, support "
                 f"{payload['support']}"]
        if inverse:
            back = deligne_to_bimodfun(fwd, fn.source, fn.target)
            exact = back == fn
            payload["round_trip_exact"] = exact
            lines.append(f"round trip exact: {exact}")
            _emit(obj, "deligne", payload, lines, ok=exact)
            return
    else:
        raise click.UsageError(
            f"no bimodcat or bimodule functor named {entity!r}")
    _emit(obj, "deligne", payload, lines)


@main.command("classify-simple")
@click.argument("src")
@click.argument("tgt")
@click.pass_obj
@_guard
def classify_simple(obj, src, tgt):
    """Classify the simple module functors between two module categories."""
    cfg = obj["cfg"]
    source = _resolve(cfg, "modcats", src)
    target = _resolve(cfg, "modcats", tgt)
    classes = classify_simple_cyclic(source, target)
    count = count_simple_cyclic(source, target)
    rows = [{"index": i,
             "orbit": [[int(x), int(y)] for x, y in c.orbit],
             "xi": c.xi.to_json()} for i, c in enumerate(classes)]
    lines = [f"{count} simple functors {src} -> {tgt}"]
    for i, c in enumerate(classes):
        lines.append(f"  [{i}] orbit {[list(p) for p in c.orbit]} "
                     f"xi {c.xi!r}")
    _emit(obj, "classify-simple",
          {"source": src, "target": tgt, "count": count, "classes": rows},
          lines)


@main.command("adjoint")
@click.argument("functor")
@click.pass_obj
@_guard
def adjoint_cmd(obj, functor):
    """Compute the adjoint of a module functor and validate it."""
    cfg = obj["cfg"]
    fn = _resolve(cfg, "functors", functor)
    if isinstance(fn, BimoduleFunctorData):
        raise click.UsageError(
            "adjoint works on module functors; map the bimodule functor "
            "through 'deligne' first")
    adj = adjoint(fn)
    rep = validate_modfun(adj)
    payload = {"functor": functor, "ok": rep.ok,
               "support": [[int(x), int(y)] for x, y in adj.support()],
               "checked": rep.checked}
    lines = [f"adjoint of {functor}: support {payload['support']}, "
             f"{'valid' if rep.ok else 'INVALID'} ({rep.checked} checks)"]
    _emit(obj, "adjoint", payload, lines, ok=rep.ok)


def _context_for(cfg: SessionConfig, name: str):
    if name in cfg.fusions:
        return fusion_context(cfg.fusions[name])
    if name in cfg.bimodcats:
        return bimodule_context(cfg.bimodcats[name])
    if name in cfg.functors:
        return functor_context(cfg.functors[name])
    raise click.UsageError(
        f"no fusion, bimodcat or functor named {name!r}")


def _all_contexts(cfg: SessionConfig):
    """Every 6j context the config defines; traceless entities are skipped."""
    contexts, skipped = [], []
    for name, fus in cfg.fusions.items():
        if fus.spherical:
            contexts.append((name, fusion_context(fus)))
        else:
            skipped.append({"id": name, "reason": "not spherical"})
    for section in ("bimodcats", "functors"):
        for name in getattr(cfg, section):
            try:
                contexts.append((name, _context_for(cfg, name)))
            except (NoTrace, TwistcatError) as exc:
                skipped.append({"id": name, "reason": str(exc)})
    return contexts, skipped


_KIND_ALIASES = {"fusion": "fusion+"}


@main.command("sixj-table")
@click.argument("kind")
@click.argument("refs", nargs=-1)
@click.pass_obj
@_guard
def sixj_table_cmd(obj, kind, refs):
    """Print every admissible 6j symbol of one kind."""
    cfg = obj["cfg"]
    kind = _KIND_ALIASES.get(kind, kind)
    if kind not in SIXJ_KINDS:
        raise click.UsageError(
            f"unknown kind {kind!r} (choose from "
            f"{', '.join(SIXJ_KINDS)})")
    if refs:
        names = list(refs)
    else:
        candidates = [n for n, _ in _all_contexts(cfg)[0]]
        if len(candidates) != 1:
            raise click.UsageError(
                "config defines several possible contexts; name one of: "
                + ", ".join(candidates))
        names = candidates
    tables = []
    lines = []
    for name in names:
        context = _context_for(cfg, name)
        if kind not in context.kinds():
            raise click.UsageError(
                f"kind {kind!r} is not defined for context {name!r} "
                f"(offers {', '.join(context.kinds())})")
        rows = sixj_table_rows(context, kind)
        tables.append({"context": name, "kind": kind,
                       "rows": [{"labels": list(r["labels"]),
                                 "indices": list(r["indices"]),
                                 "value": r["value"].to_json()}
                                for r in rows]})
        lines.append(f"{name}: {len(rows)} symbols of kind {kind}")
        for r in rows:
            idx = f" indices {tuple(r['indices'])}" if r["indices"] else ""
            lines.append(f"  labels {tuple(r['labels'])}{idx} "
                         f"value {r['value']}")
    _emit(obj, "sixj-table", {"kind": kind, "tables": tables}, lines)


@main.command()
@click.argument("relation",
                type=click.Choice(["orthogonality", "biedenharn-elliott"]))
@click.argument("refs", nargs=-1)
@click.pass_obj
@_guard
def verify(obj, relation, refs):
    """Check the orthogonality or Biedenharn-Elliott relations exactly."""
    cfg = obj["cfg"]
    if refs:
        contexts = [(name, _context_for(cfg, name)) for name in refs]
        skipped = []
    else:
        contexts, skipped = _all_contexts(cfg)
        if not contexts:
            raise click.UsageError("config defines no 6j context")
    runner = (verify_orthogonality if relation == "orthogonality"
              else verify_biedenharn_elliott)
    results = []
    lines = []
    total_checked = 0
    total_failures = 0
    for name, context in contexts:
        report = runner(context)
        results.append({"context": name, "ok": report.ok,
                        "checked": report.checked,
                        "failures": report.failures})
        total_checked += report.checked
        total_failures += len(report.failures)
        lines.append(f"{name}: checked {report.checked} identities, "
                     f"{len(report.failures)} failures")
        for failure in report.failures:
            lines.append(f"  {failure['kind']} at {failure['tuple']}: "
                         f"{failure['lhs']} != {failure['rhs']}")
    ok = all(r["ok"] for r in results)
    lines.append(f"checked {total_checked} identities, "
                 f"{total_failures} failures")
    payload = {"relation": relation, "results": results, "skipped": skipped,
               "checked": total_checked, "failures": total_failures}
    _emit(obj, "verify", payload, lines, ok)


if __name__ == "__main__":
    main()
