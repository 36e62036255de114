"""Command line: ``carto {twopoint,verify,enumerate,sample,asymptotics,export}``.

Exit codes: 0 success, 1 verification failure (a JSON witness is printed),
2 usage error.  JSON output always has sorted keys, so identical
invocations give byte-identical output.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import zlib
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import oracle, verify
from . import twopoint as tp
from .bijections import hypermap_to_map, mobile_to_hypermap
from .mobiles import Flavor, MobileTable, sample_uniform
from .series import Series2

CACHE_MAGIC = b"CARTO-TABLE\x00v1\n"
MAX_ORDER = {False: 400, True: 40}
MAX_LABEL = 60


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# output helpers


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def series_payload(s) -> dict:
    """Exact coefficients as strings, keyed by exponent."""
    if isinstance(s, Series2):
        coeffs = {}
        for n in range(s.prec + 1):
            p = s.coeff(n)
            if p:
                coeffs[str(n)] = [str(c) for c in p]
        return {"variable": "t", "z_polynomials": True, "trunc_order": str(s.prec),
                "coefficients": coeffs}
    coeffs = {str(e): str(c) for e, c in s.terms().items()}
    return {"variable": "t", "grid_step": str(s.step), "trunc_order": str(s.trunc_order),
            "coefficients": coeffs}


def series_rows(name, i, s) -> list[list[str]]:
    rows = []
    if isinstance(s, Series2):
        for n in range(s.prec + 1):
            for k, c in enumerate(s.coeff(n)):
                if c:
                    rows.append([name, str(i), str(n), str(k), str(c)])
    else:
        for e, c in s.terms().items():
            rows.append([name, str(i), str(e), "", str(c)])
    return rows


def _csv(rows) -> str:
    import csv
    import io
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["observable", "index", "exponent", "z_power", "coefficient"])
    w.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# cache


def cache_path(key: dict) -> Path | None:
    root = os.environ.get("CARTO_CACHE_DIR")
    if not root:
        return None
    digest = hashlib.sha256(json.dumps(key, sort_keys=True).encode()).hexdigest()[:24]
    return Path(root) / f"{digest}.ctab"


def cache_load(key: dict):
    path = cache_path(key)
    if path is None or not path.exists():
        return None
    raw = path.read_bytes()
    if not raw.startswith(CACHE_MAGIC):
        return None  # foreign or older format: recompute
    try:
        data = json.loads(zlib.decompress(raw[len(CACHE_MAGIC):]))
    except (zlib.error, ValueError):
        return None
    return data if data.get("key") == key else None


def cache_store(key: dict, payload) -> None:
    path = cache_path(key)
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    blob = zlib.compress(json.dumps({"key": key, "payload": payload}, sort_keys=True).encode())
    tmp = path.with_suffix(".tmp")
    tmp.write_bytes(CACHE_MAGIC + blob)
    tmp.replace(path)


# ---------------------------------------------------------------------------
# subcommands


def _family(name):
    try:
        return tp.family(name)
    except tp.TwoPointError as e:
        raise UsageError(str(e))


def _check_order(fam, order):
    if order < 1 or order > MAX_ORDER[fam.two_param]:
        raise UsageError(f"--order must lie in 1..{MAX_ORDER[fam.two_param]} for {fam.tag}")


def _tables(fam, i_max, order, provenance):
    out = {}
    if provenance in ("recurrence", "both"):
        out["recurrence"] = tp.solve_recurrence(fam, i_max, order)
    if provenance in ("closed", "both"):
        out["closed_form"] = tp.closed_form(fam, i_max, order)
    return out


def _select(table, i, z):
    obs = {}
    for name in ("T", "U", "R", "S", "V", "calR"):
        if name in table.series and i in table.series[name]:
            s = table.series[name][i]
            if z is not None and isinstance(s, Series2):
                s = s.at_z(z)
            obs[name] = s
    if "R3" in table.series:
        for key, s in sorted(table.series["R3"].items()):
            if key[0] == i:
                obs["R" + ",".join(map(str, key))] = s
    return obs


def cmd_twopoint(a) -> int:
    fam = _family(a.family)
    _check_order(fam, a.order)
    if not 1 <= a.i <= MAX_LABEL:
        raise UsageError(f"--i must lie in 1..{MAX_LABEL}")
    z = None
    if a.z is not None:
        if not fam.two_param:
            raise UsageError("--z only applies to two-parameter families")
        try:
            z = Fraction(a.z)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"--z expects a rational, got {a.z!r}")
    tables = _tables(fam, a.i, a.order, a.provenance)
    selected = {prov: _select(t, a.i, z) for prov, t in tables.items()}
    if a.provenance == "both":
        rec, clo = selected["recurrence"], selected["closed_form"]
        diff = sorted(k for k in rec if k in clo and rec[k] != clo[k])
        if diff:
            print(_dump({"status": "mismatch", "family": fam.tag, "i": a.i, "observables": diff}))
            return 1
    prov = "recurrence" if "recurrence" in selected else "closed_form"
    obs = selected[prov]
    if a.format == "csv":
        rows = []
        for name in sorted(obs):
            rows += series_rows(name, a.i, obs[name])
        sys.stdout.write(_csv(rows))
        return 0
    out = {"family": fam.tag, "i": a.i, "order": a.order, "provenance": a.provenance,
           "z": None if z is None else str(z),
           "observables": {k: series_payload(v) for k, v in obs.items()}}
    print(_dump(out))
    return 0


def _suite_kwargs(name, a):
    if name == "roundtrip":
        return {"max_edges": a.max_edges}
    if name == "oracle":
        return {"n_max": min(a.max_edges, 4)}
    if name in ("closed", "identities"):
        return {"order": a.order, "half_order": min(a.order, 20), "i_max": a.i_max}
    if name == "contfrac":
        return {"order": a.order}
    if name == "asymptotics":
        return {"n_max": a.n_max}
    if name == "sampler":
        return {"trials": a.trials, "seed": a.seed}
    return {}


def _run_named(args):
    name, kw = args
    return verify.run_suite(name, **kw)


def cmd_verify(a) -> int:
    names = list(verify.SUITES) if a.suite == "all" else [a.suite]
    if a.max_edges < 1 or a.max_edges > 4:
        raise UsageError("--max-edges must lie in 1..4")
    if a.order < 1 or a.order > 40:
        raise UsageError("--order must lie in 1..40")
    if a.n_max < 50:
        raise UsageError("--n-max below 50 makes the extrapolation unreliable")
    jobs = [(n, _suite_kwargs(n, a)) for n in names]
    if a.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=a.jobs) as pool:
            reports = list(pool.map(_run_named, jobs))
    else:
        reports = [_run_named(j) for j in jobs]
    ok = all(r["ok"] for r in reports)
    summary = {"ok": ok, "suites": {r["suite"]: r for r in reports}}
    if ok and not a.verbose:
        summary = {"ok": True, "suites": {r["suite"]: {"ok": True, "checked": r["checked"]}
                                          for r in reports}}
    print(_dump(summary))
    return 0 if ok else 1


def cmd_enumerate(a) -> int:
    if a.family not in oracle.CAPS:
        raise UsageError(f"--family must be one of {', '.join(oracle.FAMILIES)}")
    if not 1 <= a.n <= oracle.CAPS[a.family]:
        raise UsageError(f"--n must lie in 1..{oracle.CAPS[a.family]} for {a.family}")
    key = {"cmd": "enumerate", "family": a.family, "n": a.n, "faces": a.with_faces}
    hit = cache_load(key)
    if hit is not None:
        payload = hit["payload"]
    else:
        rep = oracle.pointed_rooted_profile(a.n, a.family, with_faces=a.with_faces)
        payload = rep.to_json()
        payload["rooted"] = len(oracle.enumerate_family(a.family, a.n))
        cache_store(key, payload)
    print(_dump(payload))
    return 0


def cmd_sample(a) -> int:
    if not 1 <= a.n <= 30:
        raise UsageError("--n must lie in 1..30")
    if not 1 <= a.count <= 10_000:
        raise UsageError("--count must lie in 1..10000")
    p = None if a.p == 0 else a.p
    flavor = Flavor(p)
    table = MobileTable(flavor, a.n)
    import random
    rng = random.Random(a.seed)
    out = []
    for _ in range(a.count):
        mob = sample_uniform(flavor, a.n, rng.getrandbits(64), root_label=a.n + 1, table=table)
        low = min(mob.labels())
        mob = mob.shifted(1 - low)
        h, hl, v, root, _ = mobile_to_hypermap(mob)
        item = {"mobile": mob.encode(), "pointed_vertex": v, "root_dart": root,
                "hypermap_sigma": list(h.map.sigma), "hypermap_alpha": list(h.map.alpha)}
        if p == 2:
            m, dmap = hypermap_to_map(h)
            item["map_sigma"] = list(m.sigma)
            item["map_alpha"] = list(m.alpha)
            item["map_root"] = dmap[root]
        out.append(item)
    print(_dump({"n": a.n, "p": a.p, "seed": a.seed, "samples": out}))
    return 0


def cmd_asymptotics(a) -> int:
    fam = _family(a.family)
    if fam.tag not in ("GeneralMap", "BipartiteMap"):
        raise UsageError("asymptotics are available for general and bipartite maps")
    if a.i < 0 or a.i > MAX_LABEL:
        raise UsageError(f"--i must lie in 0..{MAX_LABEL}")
    out = {"family": fam.tag, "i": a.i}
    if a.exact or not a.estimate:
        consts = tp.asymptotic_constants(fam, a.i)
        names = {"e_prev": f"e_{{{a.i - 1},{a.i}}}", "e_same": f"e_{{{a.i},{a.i}}}",
                 "e_next": f"e_{{{a.i + 1},{a.i}}}", "v": f"v_{a.i}"}
        out["exact"] = {names[k]: str(v) for k, v in consts.items()}
        if "e_prev" not in consts and "e_next" in consts:
            # e_{0,1} counts the same half-edges as e_{1,0}
            out["exact"][f"e_{{{a.i},{a.i + 1}}}"] = str(consts["e_next"])
    if a.estimate:
        if a.i < 1:
            raise UsageError("the estimator needs --i >= 1")
        if a.n_max < 50:
            raise UsageError("--n-max below 50 makes the extrapolation unreliable")
        est = tp.estimate_asymptotics(fam, a.i, a.n_max)
        key = f"e_{{{a.i - 1},{a.i}}}"
        out["estimate"] = {key: repr(est) if a.float else str(Fraction(est).limit_denominator(10 ** 12))}
        out["n_max"] = a.n_max
    print(_dump(out))
    return 0


def _export_one(args):
    tag, i_max, order, provenance = args
    fam = tp.family(tag)
    tabs = _tables(fam, i_max, order, provenance)
    return tag, {prov: _table_payload(t, i_max) for prov, t in tabs.items()}


def _table_payload(table, i_max):
    out = {}
    for name in sorted(table.series):
        if name in ("tree", "v"):
            continue
        block = {}
        for key, s in table.series[name].items():
            k = key if isinstance(key, int) else max(key)
            if name not in ("y", "alpha") and (k < 0 or k > i_max):
                continue
            block[",".join(map(str, key)) if isinstance(key, tuple) else str(key)] = series_payload(s)
        out[name] = block
    return out


def cmd_export(a) -> int:
    tags = list(tp.FAMILIES) if a.family == "all" else [_family(a.family).tag]
    for tag in tags:
        _check_order(tp.family(tag), a.order)
    if not 1 <= a.i_max <= MAX_LABEL:
        raise UsageError(f"--i-max must lie in 1..{MAX_LABEL}")
    jobs = [(t, a.i_max, a.order, a.provenance) for t in tags]
    if a.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=a.jobs) as pool:
            results = dict(pool.map(_export_one, jobs))
    else:
        results = dict(map(_export_one, jobs))
    if a.format == "csv":
        rows = []
        for tag in sorted(results):
            for prov, block in sorted(results[tag].items()):
                for name, per in sorted(block.items()):
                    for idx, payload in sorted(per.items()):
                        for e, c in sorted(payload["coefficients"].items(), key=lambda x: Fraction(x[0])):
                            cs = c if isinstance(c, list) else [c]
                            for k, x in enumerate(cs):
                                rows.append([tag, prov, name, idx, e, str(k) if isinstance(c, list) else "", x])
        import csv
        import io
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["family", "provenance", "observable", "index", "exponent", "z_power", "coefficient"])
        w.writerows(rows)
        text = buf.getvalue()
    else:
        text = _dump({"i_max": a.i_max, "order": a.order, "families": results}) + "\n"
    if a.out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(a.out).write_text(text)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="carto", description="Planar maps, mobiles and two-point functions.")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    sub = p.add_subparsers(dest="command", required=True)

    fams = sorted(set(tp.ALIASES) | set(tp.FAMILIES))
    q = sub.add_parser("twopoint", help="two-point function series at one label")
    q.add_argument("--family", required=True, choices=fams)
    q.add_argument("--i", type=int, required=True)
    q.add_argument("--order", type=int, default=10)
    q.add_argument("--z", default=None, help="evaluate two-parameter series at this rational z")
    q.add_argument("--provenance", choices=("recurrence", "closed", "both"), default="recurrence")
    q.add_argument("--format", choices=("json", "csv"), default="json")
    q.set_defaults(func=cmd_twopoint)

    q = sub.add_parser("verify", help="run cross-check suites")
    q.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    q.add_argument("--max-edges", type=int, default=4)
    q.add_argument("--order", type=int, default=30)
    q.add_argument("--i-max", type=int, default=8)
    q.add_argument("--n-max", type=int, default=400)
    q.add_argument("--trials", type=int, default=100_000)
    q.add_argument("--seed", type=int, default=2024)
    q.add_argument("--verbose", action="store_true")
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("enumerate", help="brute-force root-type profile")
    q.add_argument("--family", required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--with-faces", action="store_true")
    q.set_defaults(func=cmd_enumerate)

    q = sub.add_parser("sample", help="uniform pointed rooted objects via mobiles")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--p", type=int, default=2, help="dark face degree (0 for general hypermaps)")
    q.add_argument("--count", type=int, default=1)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=cmd_sample)

    q = sub.add_parser("asymptotics", help="large-map averages around a label")
    q.add_argument("--family", required=True, choices=fams)
    q.add_argument("--i", type=int, required=True)
    q.add_argument("--exact", action="store_true")
    q.add_argument("--estimate", action="store_true")
    q.add_argument("--n-max", type=int, default=400)
    q.add_argument("--float", action="store_true", help="print the estimate as a float")
    q.set_defaults(func=cmd_asymptotics)

    q = sub.add_parser("export", help="write whole tables")
    q.add_argument("--family", default="all", choices=fams + ["all"])
    q.add_argument("--i-max", type=int, default=4)
    q.add_argument("--order", type=int, default=10)
    q.add_argument("--provenance", choices=("recurrence", "closed", "both"), default="both")
    q.add_argument("--format", choices=("json", "csv"), default="json")
    q.add_argument("--out", default=None)
    q.set_defaults(func=cmd_export)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if a.jobs < 1:
        print("carto: error: --jobs must be positive", file=sys.stderr)
        return 2
    try:
        return a.func(a)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"carto: error: {e}", file=sys.stderr)
        return 2


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
