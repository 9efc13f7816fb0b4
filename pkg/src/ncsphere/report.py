"""Assembly of the full invariant report and the decision payloads.

Everything here returns JSON-shaped data (dicts, lists, ints, strings,
booleans) with deterministic key order and face lists sorted by size
then lexicographically, so serialized output is byte-stable run to run.
The report is checked for internal consistency before it is handed out;
a failure there is a crash, never a silently wrong report.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .classify import center_finiteness, fiber_k0_rank, iso_verdict
from .errors import InternalInvariantError
from .faces import (
    DEFAULT_MAX_BITS,
    Face,
    all_faces,
    azumaya_faces,
    face_invariant_table,
    jump_complex,
)
from .intmat import skew_normal_form
from .lattice import Lattice
from .oracles import OracleReport, brute_coset_index, brute_image_count, twisted_block_structure
from .theta import SkewRationalMatrix, congruence_witness, decompose, profile

__all__ = [
    "InvariantReport",
    "FACE_MODES",
    "build_report",
    "iso_payload",
    "congruence_payload",
    "render_report_text",
    "render_iso_text",
    "render_congruence_text",
]

FACE_MODES = ("all", "maximal", "jump")


def _face_key(face: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    return len(face), tuple(face)


def _minimal_members(family: set[Face]) -> list[Face]:
    out = []
    for face in family:
        if not any(other != face and set(other) <= set(face) for other in family):
            out.append(face)
    return sorted(out, key=_face_key)


@dataclass(frozen=True)
class InvariantReport:
    """JSON-shaped invariant report; field names match the serialized keys."""

    input: dict
    profile: dict
    decomposition: dict
    jump_faces: list
    azumaya_faces: list
    center_skeleton: dict
    fibers: list
    finiteness: dict
    oracles: list | None

    def to_dict(self) -> dict:
        return {
            "input": self.input,
            "profile": self.profile,
            "decomposition": self.decomposition,
            "jump_faces": self.jump_faces,
            "azumaya_faces": self.azumaya_faces,
            "center_skeleton": self.center_skeleton,
            "fibers": self.fibers,
            "finiteness": self.finiteness,
            "oracles": self.oracles,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "InvariantReport":
        return cls(
            input=data["input"],
            profile=data["profile"],
            decomposition=data["decomposition"],
            jump_faces=data["jump_faces"],
            azumaya_faces=data["azumaya_faces"],
            center_skeleton=data["center_skeleton"],
            fibers=data["fibers"],
            finiteness=data["finiteness"],
            oracles=data["oracles"],
        )


def _selected_faces(
    mode: str,
    n: int,
    jump_sorted: list[Face],
    jump_facets: list[Face],
    azumaya_sorted: list[Face],
    max_bits: int,
) -> list[Face]:
    if mode == "all":
        return sorted(all_faces(n, max_bits), key=_face_key)
    if mode == "jump":
        return jump_sorted
    picked = set(jump_facets) | set(_minimal_members(set(azumaya_sorted)))
    picked.add(tuple(range(1, n + 1)))
    return sorted(picked, key=_face_key)


def build_report(
    theta: SkewRationalMatrix,
    kind: str = "sphere",
    n_tensor: int = 1,
    faces_mode: str = "all",
    with_oracle: bool = False,
    max_bits: int = DEFAULT_MAX_BITS,
) -> InvariantReport:
    """Compute every report section for one deformation matrix.

    faces_mode trims the per-face tables (and, for 'maximal'/'jump', the
    face lists down to their generators) without changing any reported
    value: 'maximal' keeps the jump facets, the minimal Azumaya faces and
    the full face; 'jump' keeps the jump complex only.
    """
    if kind not in ("sphere", "torus"):
        raise ValueError("kind must be 'sphere' or 'torus'")
    if n_tensor < 1:
        raise ValueError("tensor size must be at least 1")
    if faces_mode not in FACE_MODES:
        raise ValueError(f"faces mode must be one of {FACE_MODES}")
    n = theta.n
    prof = profile(theta)
    if prof.pi_degree**2 != prof.h:
        raise InternalInvariantError("PI degree square check failed at report time")
    dec = decompose(theta)
    if dec.free_rank + 2 * len(dec.factors) != n:
        raise InternalInvariantError("decomposition does not fill the dimension")
    jc = jump_complex(theta, max_bits)
    azu = azumaya_faces(theta, max_bits)
    every = set(all_faces(n, max_bits))
    if set(jc.faces) | set(azu) != every or set(jc.faces) & set(azu):
        raise InternalInvariantError("jump and Azumaya families do not partition the faces")
    jump_sorted = jc.sorted_faces()
    azumaya_sorted = sorted(azu, key=_face_key)
    table = face_invariant_table(theta, max_bits)
    selected = _selected_faces(
        faces_mode, n, jump_sorted, jc.facets(), azumaya_sorted, max_bits
    )
    dim_x = 2 * n - 1
    full_face = tuple(range(1, n + 1))
    skeleton_rows = [
        {
            "face": list(face),
            "torus_rank": len(face),
            "cover_degree": table[face].cover_degree,
        }
        for face in selected
    ]
    q_lattice = Lattice.from_rows(
        n, [[prof.q[i] if i == j else 0 for j in range(n)] for i in range(n)]
    )
    fiber_rows = []
    for face in selected:
        inv = table[face]
        size = n_tensor * inv.pi_degree_face
        count = inv.multiplicity
        k0 = count if face == full_face else fiber_k0_rank(theta, face)
        fiber_rows.append(
            {
                "face": list(face),
                "block_size": size,
                "block_count": count,
                "total_dim": count * size * size,
                "k0_rank": k0,
            }
        )
    alg_finite, top_finite = center_finiteness(theta)
    oracle_rows = None
    if with_oracle:
        image_oracle = brute_image_count(prof.scaled, prof.ell)
        reports = [
            OracleReport(
                "azumaya_rank_image_count", prof.h, image_oracle, prof.h == image_oracle
            )
        ]
        kernel_oracle = brute_coset_index(prof.kernel, Lattice.standard(n))
        reports.append(
            OracleReport(
                "kernel_coset_index", prof.h, kernel_oracle, prof.h == kernel_oracle
            )
        )
        for face in selected:
            _, size = twisted_block_structure(theta, face, prof.ell)
            main = table[face].pi_degree_face
            label = "twisted_block_size[" + ",".join(str(c) for c in face) + "]"
            reports.append(OracleReport(label, main, size, main == size))
        oracle_rows = [
            {
                "checked_quantity": r.checked_quantity,
                "main_value": r.main_value,
                "oracle_value": r.oracle_value,
                "agrees": r.agrees,
            }
            for r in reports
        ]
    report = InvariantReport(
        input={
            "kind": kind,
            "n": n,
            "entries": [[str(x) for x in row] for row in theta.entries],
            "n_tensor": n_tensor,
            "faces": faces_mode,
        },
        profile={
            "ell": prof.ell,
            "h": prof.h,
            "pi_degree": prof.pi_degree,
            "q": list(prof.q),
            "kernel_basis": [list(r) for r in prof.kernel.basis],
        },
        decomposition={
            "free_rank": dec.free_rank,
            "factors": [str(f) for f in dec.factors],
            "witness": [list(r) for r in dec.witness.rows],
        },
        jump_faces=[list(f) for f in (jump_sorted if faces_mode != "maximal" else jc.facets())],
        azumaya_faces=[
            list(f)
            for f in (
                azumaya_sorted
                if faces_mode == "all"
                else _minimal_members(set(azumaya_sorted))
                if faces_mode == "maximal"
                else []
            )
        ],
        center_skeleton={
            "dim_x": dim_x,
            "sphere_sufficient": prof.kernel == q_lattice,
            "faces": skeleton_rows,
        },
        fibers=fiber_rows,
        finiteness={
            "algebraically_finite": alg_finite,
            "topologically_finite": top_finite,
        },
        oracles=oracle_rows,
    )
    if report.center_skeleton["dim_x"] != 2 * n - 1:
        raise InternalInvariantError("spectrum dimension formula violated")
    return report


def iso_payload(kind: str, theta: Fraction, n: int, theta_prime: Fraction, n_prime: int) -> dict:
    """Isomorphism decision for the single-angle families, JSON-shaped."""
    verdict = iso_verdict(kind, theta, n, theta_prime, n_prime)
    classes = None
    if verdict.classes is not None:
        classes = [
            {"modulus": c.modulus, "residue": c.residue} for c in verdict.classes
        ]
    return {
        "kind": kind,
        "theta": str(Fraction(theta)),
        "n": n,
        "theta_prime": str(Fraction(theta_prime)),
        "n_prime": n_prime,
        "isomorphic": verdict.isomorphic,
        "relation": verdict.relation,
        "shift": verdict.shift,
        "classes": classes,
    }


def congruence_payload(a: SkewRationalMatrix, b: SkewRationalMatrix) -> dict:
    """Congruence decision with both divisor chains and a verified witness."""
    result: dict = {
        "n": a.n,
        "n_prime": b.n,
    }
    if a.n != b.n:
        result.update(
            {
                "common_denominator": None,
                "divisors": None,
                "zero_rank": None,
                "divisors_prime": None,
                "zero_rank_prime": None,
                "congruent": False,
                "witness": None,
            }
        )
        return result
    ell = lcm(a.ell, b.ell)
    nf_a = skew_normal_form(a.scaled(ell))
    nf_b = skew_normal_form(b.scaled(ell))
    congruent = nf_a.divisors == nf_b.divisors and nf_a.zero_rank == nf_b.zero_rank
    witness = congruence_witness(a, b) if congruent else None
    result.update(
        {
            "common_denominator": ell,
            "divisors": list(nf_a.divisors),
            "zero_rank": nf_a.zero_rank,
            "divisors_prime": list(nf_b.divisors),
            "zero_rank_prime": nf_b.zero_rank,
            "congruent": congruent,
            "witness": None if witness is None else [list(r) for r in witness.rows],
        }
    )
    return result


def _fmt_face(face: Sequence[int]) -> str:
    return "{" + ",".join(str(c) for c in face) + "}"


def _table(rows: list[tuple[str, str]]) -> list[str]:
    width = max((len(k) for k, _ in rows), default=0)
    return [f"  {k.ljust(width)}  {v}" for k, v in rows]


def render_report_text(report: InvariantReport) -> str:
    """Human-readable rendering of a report, stable line order."""
    d = report.to_dict()
    lines: list[str] = []
    entries = d["input"]["entries"]
    width = max(len(x) for row in entries for x in row)
    lines.append(
        f"Deformation matrix  (n = {d['input']['n']}, kind = {d['input']['kind']}, "
        f"tensor factor = M_{d['input']['n_tensor']})"
    )
    for row in entries:
        lines.append("    " + "  ".join(x.rjust(width) for x in row))
    lines.append("")
    lines.append("Profile")
    lines.extend(
        _table(
            [
                ("common denominator", str(d["profile"]["ell"])),
                ("Azumaya rank h", str(d["profile"]["h"])),
                ("PI degree", str(d["profile"]["pi_degree"])),
                ("row denominators q", "(" + ", ".join(map(str, d["profile"]["q"])) + ")"),
                (
                    "kernel basis rows",
                    "; ".join("(" + ", ".join(map(str, r)) + ")" for r in d["profile"]["kernel_basis"]),
                ),
            ]
        )
    )
    lines.append("")
    lines.append("Torus decomposition")
    lines.extend(
        _table(
            [
                ("free rank", str(d["decomposition"]["free_rank"])),
                ("rotation factors", ", ".join(d["decomposition"]["factors"]) or "(none)"),
            ]
        )
    )
    lines.append("")
    lines.append("Face families  (mode = " + d["input"]["faces"] + ")")
    lines.extend(
        _table(
            [
                ("jump faces", ", ".join(_fmt_face(f) for f in d["jump_faces"]) or "(none)"),
                (
                    "Azumaya faces",
                    ", ".join(_fmt_face(f) for f in d["azumaya_faces"]) or "(none)",
                ),
            ]
        )
    )
    lines.append("")
    lines.append("Center skeleton")
    lines.extend(
        _table(
            [
                ("spectrum dimension", str(d["center_skeleton"]["dim_x"])),
                ("product cover suffices", "yes" if d["center_skeleton"]["sphere_sufficient"] else "no"),
            ]
        )
    )
    lines.append("  face / torus rank / cover degree")
    for row in d["center_skeleton"]["faces"]:
        lines.append(
            f"    {_fmt_face(row['face'])}  rank {row['torus_rank']}  cover {row['cover_degree']}"
        )
    lines.append("")
    lines.append("Fibers  (face: blocks x size, total dim, K0 rank)")
    for row in d["fibers"]:
        lines.append(
            f"    {_fmt_face(row['face'])}  {row['block_count']} x M_{row['block_size']}"
            f"  dim {row['total_dim']}  K0 {row['k0_rank']}"
        )
    lines.append("")
    lines.append("Center finiteness")
    lines.extend(
        _table(
            [
                (
                    "module-finite over center",
                    "yes" if d["finiteness"]["algebraically_finite"] else "no",
                ),
                (
                    "topologically finite",
                    "yes" if d["finiteness"]["topologically_finite"] else "no",
                ),
            ]
        )
    )
    if d["oracles"] is not None:
        lines.append("")
        lines.append("Oracle cross-checks")
        for row in d["oracles"]:
            flag = "agree" if row["agrees"] else "DISAGREE"
            lines.append(
                f"    {row['checked_quantity']}: main {row['main_value']}"
                f" vs oracle {row['oracle_value']} [{flag}]"
            )
    return "\n".join(lines) + "\n"


def render_iso_text(payload: dict) -> str:
    lines = [
        f"kind      {payload['kind']}",
        f"theta     {payload['theta']}  (n = {payload['n']})",
        f"theta'    {payload['theta_prime']}  (n' = {payload['n_prime']})",
    ]
    if payload["isomorphic"]:
        sign = "-" if payload["relation"] == "difference" else "+"
        lines.append(
            f"verdict   ISOMORPHIC  (theta {sign} theta' = {payload['shift']})"
        )
    else:
        lines.append("verdict   NOT ISOMORPHIC")
    if payload["classes"] is not None:
        a, b = payload["classes"]
        lines.append(f"class     {a['residue']} mod {a['modulus']}")
        lines.append(f"class'    {b['residue']} mod {b['modulus']}")
    return "\n".join(lines) + "\n"


def render_congruence_text(payload: dict) -> str:
    def chain(divisors, zero_rank):
        if divisors is None:
            return "(dimension mismatch)"
        ds = ", ".join(map(str, divisors)) or "-"
        return f"({ds})  zero rank {zero_rank}"

    lines = [
        f"common denominator  {payload['common_denominator']}",
        f"divisor chain       {chain(payload['divisors'], payload['zero_rank'])}",
        f"divisor chain'      {chain(payload['divisors_prime'], payload['zero_rank_prime'])}",
        f"verdict             {'CONGRUENT' if payload['congruent'] else 'NOT CONGRUENT'}",
    ]
    if payload["witness"] is not None:
        lines.append("witness rows        " + "; ".join(str(list(r)) for r in payload["witness"]))
    return "\n".join(lines) + "\n"
