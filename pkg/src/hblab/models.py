"""Model builders, the versioned space-spec file format, and the
reproduction corpus.

A space spec is a JSON document with exact rationals written as strings
("3/7" or "-2"), never floats. Every builder returns a Model bundling a
seminorm family with named subspaces, functionals, and a default task
list, so `analyze` on a serialized builder output exercises the same
code paths as `reproduce`.

The reproduce corpus freezes expected outcomes for ten example ids; each
frozen value carries a provenance tag: [WORKED] for values taken from
the worked examples the corpus models, [DERIVED] for values established
independently through the LP machinery, [TRIVIAL] for construction
arithmetic. Discrepancies between worked sources and exact computation
are resolved in favor of the computation and documented in the project
decision notes.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Sequence

from . import linalg, probes
from .linalg import Subspace, Vec, unit, vec
from .ratmath import ExtRat, Q, Rational, as_q, q_str
from .seminorms import (
    Atom,
    PolyhedralSeminorm,
    SeminormFamily,
    evaluate,
    family,
    quotient_seminorm,
    seminorm,
)
from .gauge import chi, chi_on_subspace, finite_support_witness, make_pair, one_hbe
from .extensions import (
    MULTIPLE,
    UNIQUE,
    hbe_set,
    hbe_unique,
    two_extensions_at_radius,
)
from .approximation import best_approx_in_subspace, dist_to_annihilator

SCHEMA_VERSION = 1

MAX_SITES = 10  # the power-set family doubles per site

EXAMPLE_IDS = (
    "ex1-truncation",
    "ex4",
    "cpz-max",
    "cpz-sum",
    "cpz-mixed",
    "quotient-r3",
    "span-f0",
    "p5-two-dim",
    "p4-radius",
    "weak-bridge",
)


class SpecError(ValueError):
    """Input error in a space-spec document (exit code 2 territory)."""


# ---------------------------------------------------------------------------
# Model and spec format


@dataclass(frozen=True)
class Model:
    dimension: int
    seminorms: dict  # label -> PolyhedralSeminorm, insertion-ordered
    subspaces: dict  # name -> Subspace
    functionals: dict  # name -> Vec
    tasks: tuple  # of {"kind": str, "arguments": dict}

    @property
    def family(self) -> SeminormFamily:
        members = [
            s for s in self.seminorms.values() if s.ambient_dim == self.dimension
        ]
        return family(members)

    def seminorm(self, label: str) -> PolyhedralSeminorm:
        if label not in self.seminorms:
            raise SpecError(f"unknown seminorm label {label!r}")
        return self.seminorms[label]

    def subspace(self, name: str) -> Subspace:
        if name not in self.subspaces:
            raise SpecError(f"unknown subspace {name!r}")
        return self.subspaces[name]

    def functional(self, name: str) -> Vec:
        if name not in self.functionals:
            raise SpecError(f"unknown functional {name!r}")
        return self.functionals[name]


def _parse_rational(s) -> Q:
    if isinstance(s, bool) or isinstance(s, float):
        raise SpecError(f"rationals must be strings or integers, got {s!r}")
    try:
        return as_q(s)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise SpecError(f"cannot parse rational {s!r}: {e}") from None


def _parse_vec(row, dim: int, what: str) -> Vec:
    if not isinstance(row, (list, tuple)):
        raise SpecError(f"{what} must be a list of rationals")
    v = tuple(_parse_rational(c) for c in row)
    if len(v) != dim:
        raise SpecError(f"{what} has length {len(v)}, expected {dim}")
    return v


def parse_space_spec(text: str) -> Model:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}")
    if not isinstance(doc, dict):
        raise SpecError("spec document must be a JSON object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise SpecError(
            f"missing or unsupported schema_version (expected {SCHEMA_VERSION})"
        )
    dim = doc.get("dimension")
    if not isinstance(dim, int) or dim < 0:
        raise SpecError("dimension must be a nonnegative integer")
    seminorms: dict = {}
    for entry in doc.get("seminorms", []):
        label = entry.get("label")
        if not isinstance(label, str) or not label:
            raise SpecError("every seminorm needs a nonempty string label")
        if label in seminorms:
            raise SpecError(f"duplicate seminorm label {label!r}")
        qinfo = entry.get("quotient_of")
        if qinfo is not None:
            base_label = qinfo.get("base_label")
            if base_label not in seminorms:
                raise SpecError(
                    f"quotient {label!r} references unknown base {base_label!r}"
                )
            base = seminorms[base_label]
            z_rows = [
                _parse_vec(r, base.ambient_dim, f"z_basis row of {label!r}")
                for r in qinfo.get("z_basis", [])
            ]
            z = Subspace.span(base.ambient_dim, z_rows)
            qm = probes.quotient_model(family([base]), z)
            seminorms[label] = quotient_seminorm(
                label, base, z, qm.section, qm.projection
            )
            continue
        atoms = []
        for a in entry.get("atoms", []):
            combine = a.get("combine")
            if combine not in ("max", "sum"):
                raise SpecError(
                    f"atom combine must be 'max' or 'sum', got {combine!r}"
                )
            gens = tuple(
                _parse_vec(g, dim, f"generator of {label!r}")
                for g in a.get("generators", [])
            )
            if not gens:
                raise SpecError(f"atom of {label!r} has no generators")
            atoms.append(Atom(combine, gens))
        if not atoms:
            raise SpecError(f"seminorm {label!r} has no atoms")
        seminorms[label] = seminorm(label, atoms)
    subspaces = {}
    for name, rows in doc.get("subspaces", {}).items():
        basis = [_parse_vec(r, dim, f"basis row of subspace {name!r}") for r in rows]
        subspaces[name] = Subspace.span(dim, basis)
    functionals = {}
    for name, row in doc.get("functionals", {}).items():
        if not isinstance(row, (list, tuple)):
            raise SpecError(f"functional {name!r} must be a list of rationals")
        functionals[name] = tuple(_parse_rational(c) for c in row)
    tasks = []
    for t in doc.get("tasks", []):
        if not isinstance(t, dict) or "kind" not in t:
            raise SpecError("every task needs a 'kind'")
        tasks.append({"kind": t["kind"], "arguments": dict(t.get("arguments", {}))})
    return Model(dim, seminorms, subspaces, functionals, tuple(tasks))


def _vec_json(v: Vec) -> list:
    return [q_str(c) for c in v]


def serialize_space_spec(model: Model) -> str:
    sem_entries = []
    for label, s in model.seminorms.items():
        if s.is_quotient:
            w = s.quotient_of
            sem_entries.append(
                {
                    "label": label,
                    "atoms": [],
                    "quotient_of": {
                        "base_label": w.base.label,
                        "z_basis": [_vec_json(r) for r in w.z.basis],
                    },
                }
            )
        else:
            sem_entries.append(
                {
                    "label": label,
                    "atoms": [
                        {
                            "combine": a.combine,
                            "generators": [_vec_json(g) for g in a.generators],
                        }
                        for a in s.atoms
                    ],
                }
            )
    doc = {
        "schema_version": SCHEMA_VERSION,
        "dimension": model.dimension,
        "seminorms": sem_entries,
        "subspaces": {
            name: [_vec_json(r) for r in sub.basis]
            for name, sub in model.subspaces.items()
        },
        "functionals": {name: _vec_json(f) for name, f in model.functionals.items()},
        "tasks": list(model.tasks),
    }
    return json.dumps(doc, indent=2) + "\n"


def normalize_space_spec(text: str) -> str:
    """Canonical form of a spec document: parse then serialize."""
    return serialize_space_spec(parse_space_spec(text))


# ---------------------------------------------------------------------------
# Builders


def _coord_gens(indices: Sequence[int], dim: int, scale: Rational = 1):
    s = as_q(scale)
    return tuple(
        tuple((s if j == i else Q(0)) for j in range(dim)) for i in indices
    )


def build_ex4(n_max: int, k: Rational) -> Model:
    """R^2 with the three-case indexed family and the diagonal subspace.

    rho_n = n(|x|+|y|) when n is a power of two (n >= 2), n(|x|+|y|/2)
    when n is odd, n*max(|x|,|y|) otherwise; Y is the diagonal and the
    probed functional sends (x, x) to k*x."""
    if n_max < 6:
        raise SpecError("n_max must be at least 6 to include all three cases")
    k = as_q(k)
    sems = {}
    for n in range(1, n_max + 1):
        label = f"rho{n}"
        if n % 2 == 1:
            atom = Atom("sum", ((Q(n), Q(0)), (Q(0), Q(n) / 2)))
        elif n & (n - 1) == 0:
            atom = Atom("sum", ((Q(n), Q(0)), (Q(0), Q(n))))
        else:
            atom = Atom("max", ((Q(n), Q(0)), (Q(0), Q(n))))
        sems[label] = seminorm(label, [atom])
    y = Subspace.span(2, [vec([1, 1])])
    return Model(
        dimension=2,
        seminorms=sems,
        subspaces={"Y": y},
        functionals={"f": (k,)},
        tasks=(
            {"kind": "snp_probe", "arguments": {"subspace": "Y", "functionals": []}},
            {
                "kind": "hbe_unique",
                "arguments": {"seminorm": "rho6", "functional": "f", "subspace": "Y"},
            },
        ),
    )


def build_cpz(m: int, a: Sequence[int], family_kind: str) -> Model:
    """Point-evaluation model on m sites: the family ranges over all
    nonempty site subsets F, with max-type members (MAX), sum-type
    members (SUM), or both weighted by |F| (MIXED); the subspace is the
    functions vanishing on the site set `a`."""
    if not (1 <= m <= MAX_SITES):
        raise SpecError(f"m must be between 1 and {MAX_SITES} (family is 2^m-sized)")
    a = tuple(sorted(set(a)))
    if not a or any(i < 0 or i >= m for i in a):
        raise SpecError("a must be a nonempty subset of the sites")
    if len(a) >= m:
        raise SpecError("a must be a proper subset of the sites")
    kind = family_kind.lower()
    if kind not in ("max", "sum", "mixed"):
        raise SpecError("family_kind must be MAX, SUM, or MIXED")
    sems = {}
    for size in range(1, m + 1):
        for combo in itertools.combinations(range(m), size):
            tag = "".join(str(i) for i in combo)
            weight = Q(size) if kind == "mixed" else Q(1)
            gens = _coord_gens(combo, m, weight)
            if kind in ("max", "mixed"):
                label = f"rho_{tag}"
                sems[label] = seminorm(label, [Atom("max", gens)])
            if kind in ("sum", "mixed"):
                label = f"mu_{tag}" if kind == "mixed" else f"rho_{tag}"
                sems[label] = seminorm(label, [Atom("sum", gens)])
    y = Subspace.span(m, [unit(m, i) for i in range(m) if i not in a])
    return Model(
        dimension=m,
        seminorms=sems,
        subspaces={"Y": y},
        functionals={},
        tasks=(),
    )


def build_span_f0(f0: Sequence[Rational]) -> Model:
    """One-dimensional span of a function over the max family on all
    site subsets; the probe runs in EXACT mode."""
    f0 = vec(f0)
    if linalg.is_zero_vec(f0):
        raise SpecError("f0 must be nonzero")
    m = len(f0)
    if m > MAX_SITES:
        raise SpecError(f"at most {MAX_SITES} sites supported")
    sems = {}
    for size in range(1, m + 1):
        for combo in itertools.combinations(range(m), size):
            label = "rho_" + "".join(str(i) for i in combo)
            sems[label] = seminorm(label, [Atom("max", _coord_gens(combo, m))])
    return Model(
        dimension=m,
        seminorms=sems,
        subspaces={"Y": Subspace.span(m, [f0])},
        functionals={"f0_vec": f0},
        tasks=({"kind": "snp_probe", "arguments": {"subspace": "Y", "functionals": []}},),
    )


def argmax_abs(f0: Vec) -> tuple:
    top = max(abs(c) for c in f0)
    return tuple(i for i, c in enumerate(f0) if abs(c) == top)


def build_p5(f1: Sequence[Rational], f2: Sequence[Rational]) -> Model:
    """Two-dimensional span over the max family; f1 must attain its
    maximal absolute value on at least three sites."""
    f1, f2 = vec(f1), vec(f2)
    if len(f1) != len(f2):
        raise SpecError("f1 and f2 must have the same length")
    m = len(f1)
    if m > MAX_SITES:
        raise SpecError(f"at most {MAX_SITES} sites supported")
    if len(argmax_abs(f1)) < 3:
        raise SpecError("f1 must attain its maximal absolute value on >= 3 sites")
    y = Subspace.span(m, [f1, f2])
    if y.dim != 2:
        raise SpecError("span{f1, f2} is degenerate (not two-dimensional)")
    sems = {}
    for size in range(1, m + 1):
        for combo in itertools.combinations(range(m), size):
            label = "rho_" + "".join(str(i) for i in combo)
            sems[label] = seminorm(label, [Atom("max", _coord_gens(combo, m))])
    return Model(
        dimension=m,
        seminorms=sems,
        subspaces={"Y": y},
        functionals={"f1": f1, "f2": f2},
        tasks=(),
    )


def build_ex1_truncation(n: int = 3) -> Model:
    """R^n with the truncated-sum family rho_k(x) = sum_{j<=k} |x_j|."""
    sems = {}
    for k in range(1, n + 1):
        label = f"rho{k}"
        sems[label] = seminorm(label, [Atom("sum", _coord_gens(range(k), n))])
    return Model(
        dimension=n,
        seminorms=sems,
        subspaces={},
        functionals={"f": unit(n, 1)},
        tasks=({"kind": "finite_support_witness", "arguments": {"functional": "f"}},),
    )


def build_quotient_r3() -> Model:
    """The quotient transport counterexample: R^3 with the sup-norm and
    the last-two-coordinates sum seminorm, the xy-plane subspace, and the
    x-axis to quotient by.

    The sum member's kernel is exactly the quotiented axis, so upstairs
    it sits below the sup-norm in the kernel order while downstairs its
    quotient is a genuine norm: eventual uniqueness holds upstairs and
    fails in the quotient, where the family coincides with the plane
    sup-norm and 1-norm."""
    nu = seminorm("linf", [Atom("max", _coord_gens(range(3), 3))])
    sigma = seminorm("l1_yz", [Atom("sum", _coord_gens((1, 2), 3))])
    return Model(
        dimension=3,
        seminorms={"linf": nu, "l1_yz": sigma},
        subspaces={
            "Y": Subspace.span(3, [unit(3, 0), unit(3, 1)]),
            "Z": Subspace.span(3, [unit(3, 0)]),
        },
        functionals={"f": (Q(0), Q(1))},
        tasks=(
            {"kind": "snp_probe", "arguments": {"subspace": "Y", "functionals": ["f"]}},
        ),
    )


def build_p4_radius() -> Model:
    """Plane sup-norm model for two distinct extensions at any radius
    strictly above the restricted gauge."""
    return Model(
        dimension=2,
        seminorms={"linf": seminorm("linf", [Atom("max", _coord_gens(range(2), 2))])},
        subspaces={"Y": Subspace.span(2, [unit(2, 0)])},
        functionals={"f": (Q(1),)},
        tasks=(
            {
                "kind": "two_extensions_at_radius",
                "arguments": {
                    "functional": "f",
                    "subspace": "Y",
                    "rho_prime": "linf",
                    "r": "2",
                },
            },
        ),
    )


def build_weak_bridge() -> Model:
    """Plane sup-norm with an axis subspace (unique extension) and the
    diagonal (multiple extensions) for the norm-vs-weak-family bridge."""
    return Model(
        dimension=2,
        seminorms={"linf": seminorm("linf", [Atom("max", _coord_gens(range(2), 2))])},
        subspaces={
            "Y_axis": Subspace.span(2, [unit(2, 0)]),
            "Y_diag": Subspace.span(2, [vec([1, 1])]),
        },
        functionals={},
        tasks=(),
    )


def build_example(example_id: str) -> Model:
    if example_id == "ex1-truncation":
        return build_ex1_truncation()
    if example_id == "ex4":
        return build_ex4(8, 1)
    if example_id == "cpz-max":
        return build_cpz(4, (3,), "max")
    if example_id == "cpz-sum":
        return build_cpz(4, (3,), "sum")
    if example_id == "cpz-mixed":
        return build_cpz(4, (0, 1), "mixed")
    if example_id == "quotient-r3":
        return build_quotient_r3()
    if example_id == "span-f0":
        return build_span_f0((Q(1), Q(1, 2), Q(1, 3)))
    if example_id == "p5-two-dim":
        return build_p5((1, 1, 1), (0, Q(1, 2), 1))
    if example_id == "p4-radius":
        return build_p4_radius()
    if example_id == "weak-bridge":
        return build_weak_bridge()
    raise SpecError(f"unknown example id {example_id!r}; see list-examples")


# ---------------------------------------------------------------------------
# Task execution


def _ext_json(v: ExtRat) -> str:
    return "inf" if not v.is_finite else q_str(v.unwrap())


def _resolve_on_subspace(model: Model, fname: str, y: Subspace) -> Vec:
    f = model.functional(fname)
    if len(f) == y.dim:
        return f
    if len(f) == model.dimension:
        return linalg.restrict_functional(f, y)
    raise SpecError(
        f"functional {fname!r} has length {len(f)}; expected {y.dim} "
        f"(subspace coordinates) or {model.dimension} (ambient)"
    )


def run_task(model: Model, task: dict) -> dict:
    kind = task["kind"]
    args = task.get("arguments", {})
    out = {"kind": kind, "arguments": args}
    if kind == "chi":
        rho = model.seminorm(args["seminorm"])
        f = model.functional(args["functional"])
        out["value"] = _ext_json(chi(rho, f))
    elif kind == "chi_on_subspace":
        rho = model.seminorm(args["seminorm"])
        y = model.subspace(args["subspace"])
        f = _resolve_on_subspace(model, args["functional"], y)
        out["value"] = _ext_json(chi_on_subspace(rho, f, y))
    elif kind == "hbe_unique":
        rho = model.seminorm(args["seminorm"])
        y = model.subspace(args["subspace"])
        f = _resolve_on_subspace(model, args["functional"], y)
        cert = hbe_unique(make_pair(f, y, rho))
        out["verdict"] = cert.verdict
        out["witness"] = _vec_json(cert.witness)
        if cert.second_witness is not None:
            out["second_witness"] = _vec_json(cert.second_witness)
    elif kind == "one_hbe":
        rho = model.seminorm(args["seminorm"])
        y = model.subspace(args["subspace"])
        f = _resolve_on_subspace(model, args["functional"], y)
        out["witness"] = _vec_json(one_hbe(make_pair(f, y, rho)))
    elif kind in ("snp_probe", "usnp_probe"):
        y = model.subspace(args["subspace"])
        fs = [_resolve_on_subspace(model, n, y) for n in args.get("functionals", [])]
        probe = probes.snp_probe if kind == "snp_probe" else probes.usnp_probe
        rep = probe(y, model.family, fs)
        out["quantifier_mode"] = rep.quantifier_mode
        out["verdicts"] = [
            {
                "f": _vec_json(v.f),
                "verdict": v.verdict,
                "certifying_mu": v.certifying_mu,
            }
            for v in rep.verdicts
        ]
        out["holds"] = rep.holds
    elif kind == "ysharp_membership":
        y = model.subspace(args["subspace"])
        g = model.functional(args["functional"])
        out["certifying_mu"] = probes.ysharp_membership(g, y, model.family).certifying_mu
    elif kind == "sharp_decomposition":
        y = model.subspace(args["subspace"])
        f = model.functional(args["functional"])
        dec = probes.sharp_decomposition(f, y, model.family)
        out["found"] = dec.found
        if dec.found:
            out["sharp_part"] = _vec_json(dec.sharp_part)
            out["annihilator_part"] = _vec_json(dec.annihilator_part)
            out["unique"] = dec.unique
    elif kind == "dist_to_annihilator":
        rho = model.seminorm(args["seminorm"])
        y = model.subspace(args["subspace"])
        f = model.functional(args["functional"])
        r = dist_to_annihilator(f, y, rho)
        out["distance"] = _ext_json(r.distance)
        out["verdict"] = r.verdict
    elif kind == "best_approx_in_subspace":
        rho = model.seminorm(args["seminorm"])
        y = model.subspace(args["subspace"])
        x0 = model.functional(args["point"])
        r = best_approx_in_subspace(x0, y, rho)
        out["distance"] = _ext_json(r.distance)
        out["verdict"] = r.verdict
        out["witness"] = _vec_json(r.witness)
    elif kind == "finite_support_witness":
        f = model.functional(args["functional"])
        w = finite_support_witness(f, model.family)
        out["witness"] = None if w is None else w.label
    elif kind == "two_extensions_at_radius":
        y = model.subspace(args["subspace"])
        f = _resolve_on_subspace(model, args["functional"], y)
        r = _parse_rational(args["r"])
        te = two_extensions_at_radius(f, y, model.family, args["rho_prime"], r)
        out["first"] = _vec_json(te.first)
        out["second"] = _vec_json(te.second)
        out["mu"] = te.mu_label
        out["radius"] = q_str(te.radius)
    else:
        raise SpecError(f"unknown task kind {kind!r}")
    return out


def run_model(model: Model, seed: int = 0, samples: int = 8) -> dict:
    """Execute a model's tasks in order; the report is deterministic
    (seed and sample count are echoed so reruns are comparable)."""
    results = [run_task(model, t) for t in model.tasks]
    return {
        "schema_version": SCHEMA_VERSION,
        "dimension": model.dimension,
        "seminorms": list(model.seminorms),
        "seed": seed,
        "samples": samples,
        "tasks": results,
    }


def render_report(report: dict) -> str:
    lines = [
        f"space dimension: {report['dimension']}",
        f"seminorm family: {', '.join(report['seminorms'])}",
        f"seed: {report['seed']}  samples: {report['samples']}",
        "",
    ]
    if not report["tasks"]:
        lines.append("(no tasks)")
    for i, t in enumerate(report["tasks"], 1):
        lines.append(f"task {i}: {t['kind']}")
        for key, val in t.items():
            if key in ("kind", "arguments"):
                continue
            lines.append(f"  {key}: {val}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Reproduction corpus


def _check(lines: list, ok_all: list, description: str, ok: bool, detail: str = ""):
    status = "ok" if ok else "MISMATCH"
    suffix = f" ({detail})" if detail else ""
    lines.append(f"  [{status}] {description}{suffix}")
    ok_all.append(ok)


def _cpz_phi(model: Model, alphas: dict) -> Vec:
    """Ambient Dirac combination sum(alpha_i * delta_i)."""
    out = [Q(0)] * model.dimension
    for i, c in alphas.items():
        out[i] = as_q(c)
    return tuple(out)


def _reproduce_ex1(lines, ok):
    model = build_ex1_truncation()
    fam = model.family
    f = model.functional("f")
    # [WORKED] the one-coordinate truncation gives f an infinite gauge;
    # the two-coordinate member is the first finite witness, value 1.
    _check(lines, ok, "chi(rho1, x2) is infinite", not chi(fam.member("rho1"), f).is_finite)
    w = finite_support_witness(f, fam)
    _check(lines, ok, "finite-support witness is rho2", w is not None and w.label == "rho2")
    _check(lines, ok, "chi(rho2, x2) = 1", chi(fam.member("rho2"), f) == ExtRat(Q(1)))


def _reproduce_ex4(lines, ok):
    model = build_ex4(8, 1)
    fam = model.family
    y = model.subspace("Y")
    f = model.functional("f")
    # [WORKED] restricted gauges: 1/(2n) on powers of two, 2/(3n) on odd
    # n, 1/n on the remaining even index.
    expected = {1: Q(2, 3), 2: Q(1, 4), 3: Q(2, 9), 4: Q(1, 8),
                5: Q(2, 15), 6: Q(1, 6), 7: Q(2, 21), 8: Q(1, 16)}
    for n, val in expected.items():
        got = chi_on_subspace(fam.member(f"rho{n}"), f, y)
        _check(lines, ok, f"chi^Y(f, rho{n}) = {q_str(val)}", got == ExtRat(val),
               f"got {_ext_json(got)}")
    pair6 = make_pair(f, y, fam.member("rho6"))
    cert = hbe_unique(pair6)
    poly6 = hbe_set(pair6)
    # [WORKED] the even-non-power pair has the two extensions (1,0) and (1/2,1/2).
    _check(lines, ok, "(f, rho6) is MULTIPLE containing (1,0) and (1/2,1/2)",
           cert.verdict == MULTIPLE
           and poly6.contains((Q(1), Q(0)))
           and poly6.contains((Q(1, 2), Q(1, 2))))
    c8 = hbe_unique(make_pair(f, y, fam.member("rho8")))
    _check(lines, ok, "(f, rho8) is UNIQUE with witness (1/2,1/2)",
           c8.verdict == UNIQUE and c8.witness == (Q(1, 2), Q(1, 2)))
    c5 = hbe_unique(make_pair(f, y, fam.member("rho5")))
    _check(lines, ok, "(f, rho5) is UNIQUE with witness (2/3,1/3)",
           c5.verdict == UNIQUE and c5.witness == (Q(2, 3), Q(1, 3)))
    rep = probes.snp_probe(y, fam)
    _check(lines, ok, "snp_probe FAILS in EXACT mode",
           rep.quantifier_mode == "EXACT" and not rep.holds)
    # [WORKED] no nonzero extension of f is gauge-faithful over the family.
    absent = all(
        not probes.ysharp_membership(g, y, fam).present
        for g in [(Q(1), Q(0)), (Q(1, 2), Q(1, 2)), (Q(2, 3), Q(1, 3)), (Q(0), Q(1))]
    )
    _check(lines, ok, "ysharp_membership absent for nonzero extensions", absent)


def _reproduce_cpz_max(lines, ok):
    model = build_cpz(4, (3,), "max")
    fam = model.family
    y = model.subspace("Y")
    phi = _cpz_phi(model, {0: 1, 1: Q(-1, 2), 2: 2})
    f_y = linalg.restrict_functional(phi, y)
    # [WORKED] restricted gauge over the support member is the coefficient
    # 1-norm; the unique shared extension is the Dirac combination itself.
    got = chi_on_subspace(fam.member("rho_012"), f_y, y)
    _check(lines, ok, "chi^Y(phi, rho_support) = 7/2", got == ExtRat(Q(7, 2)))
    rep = probes.usnp_probe(y, fam, [f_y], seed=0)
    v = rep.verdicts[0]
    _check(lines, ok, "usnp_probe HOLDS with the Dirac-combination witness",
           v.verdict == probes.HOLDS and v.witness == phi)
    dual = probes.duality_crosscheck(y, fam, [phi])
    _check(lines, ok, "extension and best-approximation verdicts agree", dual.all_agree)


def _reproduce_cpz_sum(lines, ok):
    model = build_cpz(4, (3,), "sum")
    fam = model.family
    y = model.subspace("Y")
    phi1 = _cpz_phi(model, {0: 1, 1: Q(-1, 2), 2: 2})
    f_y = linalg.restrict_functional(phi1, y)
    rho_p = fam.member("rho_0123")  # support joined with the vanishing site
    pair = make_pair(f_y, y, rho_p)
    # [WORKED] the gauge equals the largest coefficient in absolute value,
    # and adding half of it at the extra site gives a second extension.
    _check(lines, ok, "chi^Y(phi, rho_{F u z}) = max|alpha| = 2", pair.bound == Q(2))
    cert = hbe_unique(pair)
    _check(lines, ok, "pair (phi, rho_{F u z}) is MULTIPLE", cert.verdict == MULTIPLE)
    poly = hbe_set(pair)
    phi2 = tuple(c + (Q(1) if i == 3 else Q(0)) for i, c in enumerate(phi1))
    _check(lines, ok, "both worked witnesses lie in the extension set",
           poly.contains(phi1) and poly.contains(phi2))
    rep = probes.snp_probe(y, fam, [f_y], seed=0)
    _check(lines, ok, "snp_probe FAILS", rep.verdicts[0].verdict == probes.FAILS)


def _reproduce_cpz_mixed(lines, ok):
    model = build_cpz(4, (0, 1), "mixed")
    fam = model.family
    y = model.subspace("Y")
    f = _cpz_phi(model, {0: 2, 2: -1, 3: 3})
    dec = probes.sharp_decomposition(f, y, fam)
    # [WORKED] unique split: the off-A Dirac part is gauge-faithful, the
    # A-supported part annihilates the subspace.
    _check(lines, ok, "decomposition found and unique", dec.found and dec.unique)
    _check(lines, ok, "sharp part is the off-A Dirac combination",
           dec.found and dec.sharp_part == (Q(0), Q(0), Q(-1), Q(3)))
    _check(lines, ok, "annihilator part is the A-supported remainder",
           dec.found and dec.annihilator_part == (Q(2), Q(0), Q(0), Q(0)))


def _reproduce_quotient_r3(lines, ok):
    model = build_quotient_r3()
    fam = model.family
    y = model.subspace("Y")
    z = model.subspace("Z")
    qm = probes.quotient_model(fam, z)
    # [WORKED] the quotient family coincides with the plane sup-norm and 1-norm.
    co = (
        evaluate(qm.family.member("linf~"), (Q(1), Q(1))) == Q(1)
        and evaluate(qm.family.member("linf~"), (Q(1), Q(-2))) == Q(2)
        and evaluate(qm.family.member("l1_yz~"), (Q(1), Q(1))) == Q(2)
        and evaluate(qm.family.member("l1_yz~"), (Q(1), Q(-2))) == Q(3)
    )
    _check(lines, ok, "quotient family coincides with plane sup-norm and 1-norm", co)
    fs = [vec([1, 0]), vec([0, 1]), vec([1, 1]), vec([1, -1]), vec([2, 1]),
          vec([1, Q(1, 2)]), vec([-3, 5])]
    up = probes.snp_probe(y, fam, fs, seed=0)
    _check(lines, ok, "Y has eventual uniqueness (sampled dim-2 probe)", up.holds)
    subs = [Subspace.span(3, [unit(3, 0)]), Subspace.span(3, [unit(3, 1)])]
    exact_ok = all(probes.snp_probe(s, fam).holds for s in subs)
    _check(lines, ok, "EXACT dim-1 sub-probes hold", exact_ok)
    yq = qm.project_subspace(y)
    fq = qm.transport_functional(model.functional("f"), y)
    down = probes.snp_probe(yq, qm.family, [fq])
    v = down.verdicts[0]
    _check(lines, ok, "Y/Z fails eventual uniqueness with an explicit witness pair",
           v.verdict == probes.FAILS and v.witness_pair is not None
           and v.witness_pair[0][1] != v.witness_pair[1][1])


def _reproduce_span_f0(lines, ok):
    # [WORKED] eventual uniqueness iff the maximal absolute value is
    # attained at exactly one site; multiplicity witnesses are the two
    # point evaluations (with a sign flip when the values oppose).
    scenarios = [
        ((Q(1), Q(1, 2), Q(1, 3)), True, None),
        ((Q(1), Q(1), Q(1, 2)), False, {(Q(1), Q(0), Q(0)), (Q(0), Q(1), Q(0))}),
        ((Q(1), Q(-1), Q(1, 2)), False, {(Q(1), Q(0), Q(0)), (Q(0), Q(-1), Q(0))}),
    ]
    for f0, holds, wits in scenarios:
        model = build_span_f0(f0)
        rep = probes.snp_probe(model.subspace("Y"), model.family)
        tag = f"f0 = ({', '.join(q_str(c) for c in f0)})"
        _check(lines, ok, f"{tag}: verdict {'HOLDS' if holds else 'FAILS'}",
               rep.holds == holds and rep.quantifier_mode == "EXACT")
        if not holds:
            pair_w = rep.verdicts[0].witness_pair
            got = {pair_w[0][1], pair_w[1][1]}
            _check(lines, ok, f"{tag}: point-evaluation witnesses", got == wits)


def _reproduce_p5(lines, ok):
    model = build_p5((1, 1, 1), (0, Q(1, 2), 1))
    fam = model.family
    y = model.subspace("Y")
    # sample the restrictions of the point evaluations and their sums
    deltas = [linalg.restrict_functional(unit(3, i), y) for i in range(3)]
    fs = deltas + [linalg.vadd(deltas[i], deltas[j]) for i in range(3) for j in range(i + 1, 3)]
    rep = probes.snp_probe(y, fam, fs, seed=0)
    _check(lines, ok, "triple-maximizer span fails eventual uniqueness", not rep.holds)
    # [DERIVED] the flat functional: multiplicity with one witness
    # supported on the first two sites and one involving the third.
    fail = next(v for v in rep.verdicts if v.verdict == probes.FAILS)
    (l1, w1), (l2, w2) = fail.witness_pair
    structured = (w1[2] == 0) != (w2[2] == 0)
    _check(lines, ok, "witness pair separates the third point evaluation", structured)
    reverified = all(
        hbe_set(make_pair(fail.f, y, fam.member(lab))).contains(w)
        for lab, w in fail.witness_pair
    )
    _check(lines, ok, "witnesses re-verified in the extension set", reverified)
    # control scenario: equal values at the first two sites force the two
    # point evaluations to both extend.
    model2 = build_p5((1, 1, 1), (1, 1, 0))
    y2 = model2.subspace("Y")
    f = linalg.restrict_functional(unit(3, 0), y2)
    cert = hbe_unique(make_pair(f, y2, model2.family.member("rho_01")))
    in_set = (
        cert.verdict == MULTIPLE
        and hbe_set(make_pair(f, y2, model2.family.member("rho_01"))).contains((Q(1), Q(0), Q(0)))
        and hbe_set(make_pair(f, y2, model2.family.member("rho_01"))).contains((Q(0), Q(1), Q(0)))
    )
    _check(lines, ok, "control: both point evaluations extend", in_set)
    try:
        build_p5((1, Q(1, 2), Q(1, 3)), (0, 1, 0))
        _check(lines, ok, "unique-maximizer precondition rejected", False)
    except SpecError:
        _check(lines, ok, "unique-maximizer precondition rejected", True)


def _reproduce_p4(lines, ok):
    model = build_p4_radius()
    y = model.subspace("Y")
    f = model.functional("f")
    te = two_extensions_at_radius(f, y, model.family, "linf", 2)
    mu = model.seminorm(te.mu_label)
    okv = (
        te.first != te.second
        and chi(mu, te.first) == ExtRat(Q(2))
        and chi(mu, te.second) == ExtRat(Q(2))
        and te.first[0] == te.second[0] == Q(1)
    )
    # [DERIVED] both witnesses restrict to f and attain the radius exactly.
    _check(lines, ok, "two distinct extensions at radius 2", okv)


def _reproduce_weak_bridge(lines, ok):
    model = build_weak_bridge()
    norm = model.seminorm("linf")
    r1 = probes.property_u_bridge(norm, model.subspace("Y_axis"))
    _check(lines, ok, "axis subspace: unique extension, bridge agrees",
           r1.all_agree and r1.verdicts[0].norm_unique)
    r2 = probes.property_u_bridge(norm, model.subspace("Y_diag"))
    _check(lines, ok, "diagonal subspace: multiple extensions, bridge agrees",
           r2.all_agree and not r2.verdicts[0].norm_unique)


_REPRODUCERS = {
    "ex1-truncation": _reproduce_ex1,
    "ex4": _reproduce_ex4,
    "cpz-max": _reproduce_cpz_max,
    "cpz-sum": _reproduce_cpz_sum,
    "cpz-mixed": _reproduce_cpz_mixed,
    "quotient-r3": _reproduce_quotient_r3,
    "span-f0": _reproduce_span_f0,
    "p5-two-dim": _reproduce_p5,
    "p4-radius": _reproduce_p4,
    "weak-bridge": _reproduce_weak_bridge,
}


def reproduce(example_id: str) -> tuple:
    """Run one corpus entry against its frozen expectations; returns
    (all_ok, report lines)."""
    if example_id not in _REPRODUCERS:
        raise SpecError(f"unknown example id {example_id!r}; see list-examples")
    lines = [f"{example_id}:"]
    ok: list = []
    _REPRODUCERS[example_id](lines, ok)
    all_ok = all(ok)
    lines.append(f"  => {'PASS' if all_ok else 'FAIL'} ({sum(ok)}/{len(ok)} checks)")
    return all_ok, lines
