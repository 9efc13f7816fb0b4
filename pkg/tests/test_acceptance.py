"""Acceptance suite: ten go/no-go criteria, one verdict line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the verdict lines;
under plain -v the test names carry the same information. Every check is
exact integer arithmetic, so there are no tolerances anywhere.
"""

import json
import random
from fractions import Fraction
from math import gcd, isqrt, lcm

from conftest import random_skew, random_unimodular

from ncsphere.classify import (
    AlgebraDescriptor,
    class_chain_check,
    iso_sphere3,
    recovery_invariants,
)
from ncsphere.faces import all_faces, face_invariant_table, is_azumaya, jump_complex
from ncsphere.intmat import IntMatrix, skew_normal_form
from ncsphere.lattice import Lattice, lattice_index
from ncsphere.oracles import twisted_block_structure
from ncsphere.parsing import matrix_from_inline
from ncsphere.report import InvariantReport, build_report
from ncsphere.theta import (
    SkewRationalMatrix,
    congruent_over_Z,
    congruence_witness,
    decompose,
    h_by_image_count,
    h_by_kernel_index,
    profile,
)

S5 = matrix_from_inline("0,1/2,1/2;-1/2,0,1/2;-1/2,-1/2,0")
S5_PRIME = matrix_from_inline("0,1/2,0;-1/2,0,0;0,0,0")
S5_PRINTED_WITNESS = IntMatrix(((1, 0, 0), (0, 1, 0), (1, -1, 1)))


def _family(seed: int, count: int, sizes=(2, 3, 4, 5), max_den: int = 8):
    rng = random.Random(seed)
    return [random_skew(rng, sizes[i % len(sizes)], max_den=max_den) for i in range(count)]


FAMILY_500 = _family(20260819, 500)


def _verdict(number: int, label: str, failures: list[str]) -> None:
    status = "PASS" if not failures else "FAIL"
    print(f"[{status}] criterion {number}: {label}")
    assert not failures, f"criterion {number} ({label}): " + "; ".join(failures[:5])


def test_criterion_01_triple_formula_agreement():
    failures = []
    for theta in FAMILY_500:
        prof = profile(theta)
        by_image = h_by_image_count(theta)
        by_kernel = h_by_kernel_index(theta)
        if not (prof.h == by_image == by_kernel):
            failures.append(f"routes disagree on {theta.entries}")
        if isqrt(prof.h) ** 2 != prof.h:
            failures.append(f"h not a square on {theta.entries}")
    _verdict(1, "triple-formula agreement on 500 random matrices", failures)


def test_criterion_02_two_by_two_law():
    failures = []
    for q in range(1, 51):
        for p in range(1, q + 1):
            if gcd(p, q) != 1:
                continue
            theta = SkewRationalMatrix(
                ((Fraction(0), Fraction(p, q)), (Fraction(-p, q), Fraction(0)))
            )
            prof = profile(theta)
            if prof.h != q * q or prof.pi_degree != q:
                failures.append(f"p/q = {p}/{q} gave h = {prof.h}")
    _verdict(2, "2x2 law h = q^2 for every lowest-terms p/q, q <= 50", failures)


def test_criterion_03_s5_golden_example():
    failures = []
    prof = profile(S5)
    if prof.h != 4:
        failures.append(f"h = {prof.h}")
    if prof.pi_degree != 2:
        failures.append(f"pi degree = {prof.pi_degree}")
    if prof.kernel.basis != ((1, 1, 1), (0, 2, 0), (0, 0, 2)):
        failures.append(f"kernel basis = {prof.kernel.basis}")
    if lattice_index(prof.kernel, Lattice.standard(3)) != 4:
        failures.append("kernel index is not 4")
    jc = jump_complex(S5)
    nonempty = sorted(f for f in jc.faces if f)
    if nonempty != [(1,), (2,), (3,)]:
        failures.append(f"jump faces = {nonempty}")
    table = face_invariant_table(S5)
    if table[(1, 2, 3)].cover_degree != 2:
        failures.append(f"generic cover degree = {table[(1, 2, 3)].cover_degree}")
    report = build_report(S5).to_dict()
    if report["center_skeleton"]["sphere_sufficient"] is not False:
        failures.append("sphere_sufficient should be false")
    if not congruent_over_Z(S5, S5_PRIME):
        failures.append("congruence with the rank-one half matrix fails")
    if S5.conjugated(S5_PRINTED_WITNESS) != S5_PRIME:
        failures.append("printed witness does not conjugate theta onto theta'")
    witness = congruence_witness(S5, S5_PRIME)
    if witness is None or S5.conjugated(witness) != S5_PRIME:
        failures.append("computed witness fails verification")
    _verdict(3, "all-halves 3x3 golden example", failures)


def test_criterion_04_azumaya_dichotomy():
    rng = random.Random(11)
    failures = []
    matrices = []
    while len(matrices) < 100:
        matrices.append(random_skew(rng, 2 + len(matrices) % 3, max_den=1))
    while len(matrices) < 200:
        candidate = random_skew(rng, 2 + len(matrices) % 3, max_den=6)
        if not candidate.is_integral():
            matrices.append(candidate)
    for theta in matrices:
        azumaya = is_azumaya(theta)
        integral = theta.is_integral()
        empty_jump = len(jump_complex(theta).faces) == 0
        if not (azumaya == integral == empty_jump):
            failures.append(
                f"azumaya={azumaya} integral={integral} empty={empty_jump} on {theta.entries}"
            )
    _verdict(4, "Azumaya iff integral iff empty jump complex, 200 matrices", failures)


def test_criterion_05_jump_downward_closure():
    failures = []
    for theta in FAMILY_500:
        faces = jump_complex(theta).faces
        for face in faces:
            for drop in range(len(face)):
                sub = face[:drop] + face[drop + 1:]
                if sub not in faces:
                    failures.append(f"{sub} missing below {face} on {theta.entries}")
    _verdict(5, "jump family downward closed on the criterion-1 family", failures)


def test_criterion_06_classification_chain():
    failures = []
    checked = 0
    for q in range(2, 31):
        units = [p for p in range(1, q) if gcd(p, q) == 1]
        for p in units:
            for p_prime in units:
                for n in range(1, 11):
                    via_chain = class_chain_check(p, q, p_prime, q, n)
                    via_angles = iso_sphere3(Fraction(p, q), n, Fraction(p_prime, q), n)
                    checked += 1
                    if via_chain != via_angles:
                        failures.append(f"mismatch at p={p} p'={p_prime} q={q} n={n}")
    if checked < 30000:
        failures.append(f"only {checked} cases enumerated")
    _verdict(6, "characteristic-class chain matches the angle test exhaustively", failures)


def test_criterion_07_congruence_invariance():
    rng = random.Random(77)
    failures = []
    for i in range(200):
        theta = random_skew(rng, 2 + i % 4, max_den=6)
        transform = random_unimodular(rng, theta.n)
        moved = theta.conjugated(transform)
        a, b = profile(theta), profile(moved)
        if (a.h, a.pi_degree) != (b.h, b.pi_degree):
            failures.append(f"h or pi degree moved on {theta.entries}")
        ell = lcm(a.ell, b.ell)
        nf_a = skew_normal_form(theta.scaled(ell))
        nf_b = skew_normal_form(moved.scaled(ell))
        if nf_a.divisors != nf_b.divisors or nf_a.zero_rank != nf_b.zero_rank:
            failures.append(f"divisor chain moved on {theta.entries}")
        if decompose(theta).factors != decompose(moved).factors:
            failures.append(f"rotation factors moved on {theta.entries}")
        if not congruent_over_Z(theta, moved):
            failures.append(f"congruence test fails on {theta.entries}")
    _verdict(7, "profile invariants stable under 200 unimodular moves", failures)


def test_criterion_08_oracle_certification():
    rng = random.Random(88)
    failures = []
    collected = []
    while len(collected) < 60:
        theta = random_skew(rng, 2 + len(collected) % 3, max_den=6)
        if profile(theta).ell <= 6:
            collected.append(theta)
    for theta in collected:
        prof = profile(theta)
        table = face_invariant_table(theta)
        for face in all_faces(theta.n):
            count, size = twisted_block_structure(theta, face, prof.ell)
            if size != table[face].pi_degree_face:
                failures.append(f"block size off at {face} on {theta.entries}")
            if count * size * size != prof.ell ** len(face):
                failures.append(f"dimension conservation off at {face} on {theta.entries}")
    _verdict(8, "twisted-group-algebra oracle certifies all faces, n <= 4, l <= 6", failures)


def test_criterion_09_recovery_separation():
    failures = []
    for kind in ("sphere", "torus"):
        tuples = {}
        for m in range(2, 6):
            zero = SkewRationalMatrix(
                tuple(tuple(Fraction(0) for _ in range(m)) for _ in range(m))
            )
            for n_tensor in range(1, 7):
                inv = recovery_invariants(AlgebraDescriptor(kind, zero, n_tensor))
                key = (
                    inv.min_irrep_dim,
                    inv.k0_rank,
                    inv.identity_divisibility,
                    inv.dim_center_spectrum,
                )
                if key in tuples:
                    failures.append(
                        f"{kind}: (m={m}, n={n_tensor}) collides with {tuples[key]}"
                    )
                tuples[key] = (m, n_tensor)
    _verdict(9, "recovery invariants separate the (m, n_tensor) grid", failures)


def test_criterion_10_cli_contract(capsys, tmp_path):
    import ncsphere.cli as cli

    failures = []
    argv = ["report", "--matrix", "0,1/2,1/2;-1/2,0,1/2;-1/2,-1/2,0", "--oracle"]
    code1 = cli.main(argv)
    out1 = capsys.readouterr().out
    code2 = cli.main(argv)
    out2 = capsys.readouterr().out
    if code1 != 0 or code2 != 0:
        failures.append(f"exit codes {code1}, {code2}")
    if out1 != out2:
        failures.append("two identical runs differ")
    parsed = InvariantReport.from_dict(json.loads(out1))
    rebuilt = build_report(S5, with_oracle=True)
    if parsed != rebuilt:
        failures.append("serialized report does not round-trip")

    if cli.main(["report", "--matrix", "1,1/2;-1/2,0"]) != 2:
        failures.append("nonzero diagonal should exit 2")
    capsys.readouterr()
    if cli.main(["report", "--matrix", "0,oops;-1,0"]) != 2:
        failures.append("malformed rational should exit 2")
    capsys.readouterr()
    path = tmp_path / "broken.json"
    path.write_text("{")
    if cli.main(["report", str(path)]) != 2:
        failures.append("broken JSON should exit 2")
    capsys.readouterr()
    rows = [["0"] * 5 for _ in range(5)]
    rows[0][1], rows[1][0] = "1/2", "-1/2"
    inline = ";".join(",".join(r) for r in rows)
    if cli.main(["report", "--matrix", inline, "--max-bits", "4"]) != 3:
        failures.append("guard breach should exit 3")
    capsys.readouterr()
    _verdict(10, "CLI round-trip, exit codes, deterministic bytes", failures)
