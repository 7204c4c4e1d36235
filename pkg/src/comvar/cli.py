"""Command-line driver: presentation, relation bases, verification suites,
Hochschild tables, kernel oracle; deterministic JSON output and a persistent
content-hashed result cache.

Exit codes: 0 success, 1 configuration error, 2 verification mismatch.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
import time
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .exactlin import QQ, Ring, parse_ring
from .relgen import presentation_algebra, relation_R
from .superpoly import AlgebraElement

SCHEMA_VERSION = "1"


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    n: int = 0
    coeff: str = "Z"
    max_degree: int | None = None
    truncation: int | None = None
    fmt: str = "json"
    out: str | None = None
    cache_dir: str | None = None
    jobs: int = 1
    base: str | None = None
    space: str | None = None

    @property
    def ring(self) -> Ring:
        try:
            return parse_ring(self.coeff)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def cache_key(self) -> str:
        parts = [SCHEMA_VERSION, self.subcommand, str(self.n), self.coeff,
                 str(self.max_degree), str(self.truncation),
                 str(self.base), str(self.space)]
        return "-".join(p.replace("/", "_").replace(":", "_") for p in parts)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def _coeff_str(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def element_json(el: AlgebraElement) -> list[dict]:
    return [{"monomial": el.alg.monomial_str(key), "coeff": _coeff_str(c)}
            for key, c in el.sorted_terms()]


def row_json(row, names) -> list[dict]:
    return [{"monomial": names[i], "coeff": _coeff_str(c)}
            for i, c in enumerate(row) if c]


def element_text(el: AlgebraElement) -> str:
    return str(el)


def canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# Cache
# ---------------------------------------------------------------------------

class ResultCache:
    """Payload cache keyed by config; content-hash validated on read."""

    def __init__(self, directory: str | None):
        self.directory = directory

    def load(self, key: str):
        if not self.directory:
            return None
        path = os.path.join(self.directory, key + ".json")
        try:
            with open(path, "r", encoding="utf-8") as fh:
                wrapper = json.load(fh)
            body = canonical_json(wrapper["payload"])
            digest = hashlib.sha256(body.encode()).hexdigest()
            if digest != wrapper.get("sha256"):
                return None
            return wrapper["payload"]
        except (OSError, ValueError, KeyError):
            return None

    def store(self, key: str, payload) -> None:
        if not self.directory:
            return
        os.makedirs(self.directory, exist_ok=True)
        body = canonical_json(payload)
        wrapper = {"payload": payload,
                   "sha256": hashlib.sha256(body.encode()).hexdigest()}
        path = os.path.join(self.directory, key + ".json")
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(wrapper, fh, sort_keys=True)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_present(cfg: RunConfig) -> dict:
    """Generators, relations and degreewise relation-ideal ranks."""
    from .idealcalc import PresentationSpec, kernel_oracle
    n = cfg.n
    ring = cfg.ring
    A = presentation_algebra(n, "Z")
    if cfg.truncation is not None and cfg.truncation < n:
        raise ConfigError("--truncation must be at least n")
    gens = [{"name": g.name, "degree": g.degree,
             "biweight": list(g.biweight) if g.biweight else None}
            for g in A.generators]
    rels = [relation_R(l, n, cfg.truncation) for l in range(1, n + 1)]
    payload: dict = {
        "schema_version": SCHEMA_VERSION,
        "n": n,
        "ring": ring.name,
        "generators": gens,
        "relations": [{
            "name": r.name,
            "degree": r.coh_degree,
            "element": element_json(r.element),
            "text": element_text(r.element),
        } for r in rels],
    }
    if cfg.max_degree is not None:
        spec = PresentationSpec(n, "Z", ring)
        ranks = {}
        for d in range(cfg.max_degree + 1):
            ranks[str(d)] = len(kernel_oracle(spec, d))
        payload["ideal_ranks"] = ranks
    return payload


def cmd_relations(cfg: RunConfig) -> dict:
    """The reduced relation basis of the non-equivariant presentation."""
    from .idealcalc import relation_basis, rows_to_primitive
    ring = cfg.ring
    n = cfg.n
    if not ring.is_field or (ring.characteristic and
                             factorial(n) % ring.characteristic == 0):
        raise ConfigError(
            f"relations needs a coefficient field with {n}! invertible")
    basis = relation_basis(n, ring, jobs=cfg.jobs)
    blocks = {}
    for (a, b), block in sorted(basis.blocks.items()):
        rows = []
        prim = rows_to_primitive(block.gbar_rows()) if ring is QQ else \
            block.gbar_rows()
        for row in prim:
            rows.append(row_json(row, block.mono_names))
        blocks[f"({a},{b})"] = {
            "dimension": block.gbar_dim,
            "basis": rows,
            "saturation_exponents": {
                str(d): c.sat_exponent
                for d, c in sorted(block.components.items()) if c.dim_gbar},
        }
    payload = {
        "schema_version": SCHEMA_VERSION,
        "n": n,
        "ring": ring.name,
        "total_dimension": basis.total_dim,
        "blocks": blocks,
        "monomial_part_rule":
            f"all monomials of weight (a,b) with a>{n} or b>{n}",
        "monomial_part": {f"({a},{b})": monos for (a, b), monos
                          in sorted(basis.monomial_part.items())},
    }
    return payload


def cmd_verify(cfg: RunConfig) -> dict:
    from .verify import verification_report
    d_max = cfg.max_degree if cfg.max_degree is not None else 12
    return {"schema_version": SCHEMA_VERSION,
            **verification_report(cfg.n, cfg.ring, d_max)}


def cmd_oracle(cfg: RunConfig) -> dict:
    from .idealcalc import PresentationSpec, degreewise_ideal
    d_max = cfg.max_degree if cfg.max_degree is not None else 2 * cfg.n
    spec = PresentationSpec(cfg.n, "Z", cfg.ring)
    ideal = degreewise_ideal(spec, d_max)
    degrees = {}
    for d in range(d_max + 1):
        basis = ideal.degrees.get(d, [])
        degrees[str(d)] = {
            "rank": ideal.rank(d),
            "basis": [{"element": element_json(el), "text": element_text(el)}
                      for el in basis],
        }
    return {"schema_version": SCHEMA_VERSION, "n": cfg.n,
            "ring": cfg.ring.name, "degrees": degrees}


_HH_BASES = {
    "poly2": ("poly", 2),
    "ext1": ("ext", 1),
}
_HH_SPACES = {"circle": "circle", "torus": "torus2"}


def cmd_hh(cfg: RunConfig) -> dict:
    from .hhloday import (BaseAlgebra, circle, hochschild_homology_ranks,
                          torus2)
    if cfg.base not in _HH_BASES:
        raise ConfigError(f"--base must be one of {sorted(_HH_BASES)}")
    if cfg.space not in _HH_SPACES:
        raise ConfigError(f"--space must be one of {sorted(_HH_SPACES)}")
    kind, deg = _HH_BASES[cfg.base]
    model = circle() if cfg.space == "circle" else torus2()
    cap = cfg.max_degree if cfg.max_degree is not None else 6
    table = hochschild_homology_ranks(BaseAlgebra(kind, deg), model, cap,
                                      cfg.ring)
    return {
        "schema_version": SCHEMA_VERSION,
        "base": cfg.base,
        "space": cfg.space,
        "ring": cfg.ring.name,
        "ranks": {str(d): r for d, r in sorted(table.ranks.items())},
        "torsion": {str(d): t for d, t in sorted(table.torsion.items()) if t},
    }


_COMMANDS = {
    "present": cmd_present,
    "relations": cmd_relations,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
    "hh": cmd_hh,
}


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------

def _render_text(payload, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(payload, dict):
        for k, v in payload.items():
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.append(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(payload, list):
        for v in payload:
            if isinstance(v, (dict, list)):
                lines.append(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{payload}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="comvar",
        description="Exact presentations of equivariant cohomology rings of "
                    "commuting varieties.")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--n", type=int, default=0)
        p.add_argument("--coeff", type=str, default="Z",
                       help="Z | Q | Fp:<p>")
        p.add_argument("--max-degree", type=int, default=None)
        p.add_argument("--truncation", type=int, default=None)
        p.add_argument("--format", dest="fmt", choices=["json", "text"],
                       default="json")
        p.add_argument("--out", type=str, default=None)
        p.add_argument("--cache-dir", type=str, default=None)
        p.add_argument("--jobs", type=int, default=1)
        if name == "hh":
            p.add_argument("--base", choices=sorted(_HH_BASES), default="poly2")
            p.add_argument("--space", choices=sorted(_HH_SPACES),
                           default="circle")
    return parser


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one configuration; returns (exit code, rendered output)."""
    cache = ResultCache(cfg.cache_dir
                        or os.environ.get("COMVAR_CACHE_DIR") or None)
    key = cfg.cache_key()
    t0 = time.time()
    payload = cache.load(key)
    cached = payload is not None
    if payload is None:
        payload = _COMMANDS[cfg.subcommand](cfg)
        cache.store(key, payload)
    envelope = {
        "schema_version": SCHEMA_VERSION,
        "subcommand": cfg.subcommand,
        "config": {
            "n": cfg.n, "coeff": cfg.coeff, "max_degree": cfg.max_degree,
            "truncation": cfg.truncation, "base": cfg.base,
            "space": cfg.space,
        },
        "cached": cached,
        "timing_ms": round(1000 * (time.time() - t0), 3),
        "payload": payload,
    }
    code = 0
    if cfg.subcommand == "verify" and not payload.get("ok", True):
        code = 2
    if cfg.fmt == "json":
        text = json.dumps(envelope, indent=2, sort_keys=True)
    else:
        text = _render_text(envelope)
    return code, text


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(
        subcommand=args.subcommand, n=args.n, coeff=args.coeff,
        max_degree=args.max_degree, truncation=args.truncation,
        fmt=args.fmt, out=args.out, cache_dir=args.cache_dir, jobs=args.jobs,
        base=getattr(args, "base", None), space=getattr(args, "space", None))
    try:
        cfg.ring  # validate early
        if cfg.n < 0:
            raise ConfigError("--n must be nonnegative")
        code, text = run(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
