"""Plain-text rendering of the JSON payloads produced by the CLI.

Nothing is recomputed here; every line comes from the payload dictionary.
"""

from __future__ import annotations


def _yes(flag) -> str:
    if flag is None:
        return "n/a"
    return "yes" if flag else "no"


def _matrix_lines(rows: list[str], indent: str = "  ") -> list[str]:
    return [indent + " ".join(r) for r in rows]


def _certificate(cert: dict) -> list[str]:
    lines = ["matrix:"]
    lines += _matrix_lines(cert["matrix"])
    lines += [
        f"dimension:     {cert['dimension']}",
        f"orientable:    {_yes(cert['orientable'])}",
        f"t:             {cert['t']}",
        f"witness:       {cert['witness'] or '-'}",
        f"K^0:           {cert['k0']}",
        f"K^1:           {cert['k1']}",
        f"even torsion:  {cert['even_torsion']}",
        f"dad:           {cert['dad']}",
        f"cover:         k={cert['cover']['k']} m={cert['cover']['m']} degree={cert['cover']['degree']}",
        f"status:        {cert['status']}",
        "evidence:",
    ]
    for e in cert["evidence"]:
        mark = "+" if e["holds"] else "-"
        lines.append(f"  [{mark}] {e['rule']}: {e['condition']}")
    return lines


def render_analyze(p: dict) -> str:
    lines = _certificate(p["certificate"])
    lines.append("cohomology:")
    lines += [f"  H^{k} = {g}" for k, g in enumerate(p["cohomology"])]
    lines.append(f"betti:         {' '.join(str(b) for b in p['betti'])}")
    lines.append(f"H_1:           {p['h1']}")
    lines.append(f"|F|:           {p['holonomy_order']}")
    ring = p["ring"]
    lines.append("ring relations:")
    lines += [f"  {r}" for r in ring["relations"]]
    lines.append(f"graded dims:   {' '.join(str(d) for d in ring['graded_dimensions'])}")
    if ring["witness_fourth_power"] is not None:
        lines.append(f"witness^4:     {ring['witness_fourth_power']}")
    if p["k_theory"] != "unknown":
        lines.append(f"extension:     {p['k_theory']['extension']}")
    if p["odometer_homology"]:
        lines.append("odometer homology:")
        lines += [f"  H_{q} = {g}" for q, g in enumerate(p["odometer_homology"])]
    return "\n".join(lines)


def render_search(p: dict) -> str:
    lines = [f"dimension {p['dimension']}: {p['analyzed']} matrices"]
    width = max(len(s) for s in p["counts"])
    lines += [f"  {s.ljust(width)}  {c}" for s, c in p["counts"].items()]
    if p["counterexamples"]:
        lines.append("counterexamples:")
        for c in p["counterexamples"]:
            lines.append(f"  #{c['position']}  {' '.join(c['matrix'])}  witness {c['witness']}")
    return "\n".join(lines)


def render_product(p: dict) -> str:
    s = p["product"]
    lines = ["base:"]
    lines += ["  " + line for line in _certificate(p["base"])]
    lines += [
        f"product with T^{s['torus']}: dimension {s['dimension']}, multiplicity {s['multiplicity']}",
        f"  even cohomology:     {s['even_cohomology']}",
        f"  known even torsion:  {s['even_torsion_known']}"
        + ("" if s["even_torsion_complete"] else " (plus undetermined summands)"),
        f"  K^0:                 {s['k0']}",
        f"  known K^0 torsion:   {s['k0_torsion_known']}"
        + ("" if s["k0_torsion_complete"] else " (plus undetermined summands)"),
        f"  dad:                 {s['dad']}",
        f"  status:              {s['status']}",
    ]
    return "\n".join(lines)


def render_simulate(p: dict) -> str:
    c = p["cover"]
    lines = ["matrix:"]
    lines += _matrix_lines(p["matrix"])
    lines += [
        f"cover:          k={c['k']} m={c['m']} degree={c['degree']}",
        f"level:          {p['level']} ({p['points']} points, step {p['coordinate_step']})",
        "generators:",
    ]
    lines += [f"  s{i} = {g}" for i, g in enumerate(p["generators"], start=1)]
    lines += [
        f"bijective:      {_yes(p['bijective'])}",
        f"transitive:     {_yes(p['transitive'])}",
        f"equivariant:    {_yes(p['equivariant'])}",
        f"oracle agrees:  {_yes(p['oracle_agreement'])}",
    ]
    for name, perm in p.get("permutations", {}).items():
        lines.append(f"{name}: {' '.join(str(x) for x in perm)}")
    return "\n".join(lines)


RENDERERS = {
    "analyze": render_analyze,
    "search": render_search,
    "product": render_product,
    "simulate": render_simulate,
}


def render_text(command: str, payload: dict) -> str:
    return RENDERERS[command](payload)
