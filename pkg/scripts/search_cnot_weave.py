"""Build a Fibonacci CNOT braid word by weaving the control pair through the target.

The control qubit's first two anyons form a pair P whose total charge is the
control bit.  Moving P rigidly is exactly trivial when that charge is 0 and
acts like a single Fibonacci anyon when it is 1, so a weave of P that does X
on the target (in the charge-1 case) yields a controlled gate.  The word is
assembled from three weaves found by meet-in-the-middle search over
three-anyon braids:

* injection: P travels from the right end of (t2, t3, P) to the left end while
  acting as the identity up to phase on all three fusion states,
* flip: P, now sitting between t1 and t2, winds around them to give iX up to
  a phase,
* phase fix: a braid on the control qubit removing the leftover relative phase.

The word is injection, flip, inverse injection, phase fix.  The composite is
scored in the full two-qubit space and optionally written as a braid-word
file.  ``--half 3`` takes several minutes:

    python scripts/search_cnot_weave.py --half 3 --out src/anyonbraid/data/cnot_weave.braid
"""
from __future__ import annotations

import argparse
import itertools
import math
from pathlib import Path

import numpy as np
from scipy.spatial import cKDTree

from anyonbraid.basis import enumerate_basis
from anyonbraid.braid import sigma
from anyonbraid.circuit import BraidWord, compare_gate
from anyonbraid.formats import word_to_json
from anyonbraid.model import fibonacci_model
from anyonbraid.verify import spectral_distance

MODEL = fibonacci_model()
THREE = enumerate_basis(MODEL, 1, 1, 3)
# sector-1 block uses states (i1 = 0, i1 = 1); state 1 is the lone sector-0 state
BLOCK = [0, 2]
G2 = {g: sigma(THREE, g).dense()[np.ix_(BLOCK, BLOCK)] for g in (1, 2)}
PHASE0 = {g: sigma(THREE, g).dense()[1, 1] for g in (1, 2)}


def power(g, e):
    m = np.linalg.matrix_power(G2[g], abs(e))
    return m if e > 0 else m.conj().T


def lift(mat2, k):
    """Remove the determinant phase: det(sigma block) = exp(-i pi / 5) per exchange."""
    return mat2 * np.exp(1j * math.pi * k / 10)


def quat(s):
    a, b = s[0, 0], s[0, 1]
    return np.array([a.real, a.imag, b.real, b.imag])


def segments(gens, exps):
    """All words with alternating generators ``gens[i]`` and exponents from ``exps[i]``."""
    for combo in itertools.product(*exps):
        yield tuple(zip(gens, combo))


def evaluate(word):
    m = np.eye(2, dtype=complex)
    k = 0
    for g, e in word:
        m = power(g, e) @ m
        k += e
    return m, k


def table(words):
    mats, ks = [], []
    for w in words:
        m, k = evaluate(w)
        mats.append(lift(m, k))
        ks.append(k)
    return mats, np.array(ks)


def three_by_three(word):
    m, k = evaluate(word)
    phase = np.prod([PHASE0[g] ** e for g, e in word])
    full = np.zeros((3, 3), dtype=complex)
    full[:2, :2] = m
    full[2, 2] = phase
    return full


def meet_in_middle(first, second, target_of, score, keep=200):
    """Pairs (b, a) with lift(a) lift(b) close to ``target_of(k_a + k_b)``; word order is b then a."""
    ma, ka = table(first)
    mb, kb = table(second)
    best = []
    for res in sorted(set(ka % 20)):
        sel = np.nonzero(ka % 20 == res)[0]
        tree = cKDTree(np.array([quat(ma[i]) for i in sel]))
        for j, m in enumerate(mb):
            tgt = target_of((res + kb[j]) % 20)
            if tgt is None:
                continue
            want = tgt @ np.linalg.inv(m)
            for sign in (1, -1):
                d, idx = tree.query(sign * quat(want))
                best.append((d, second[j], first[sel[idx]]))
    best.sort(key=lambda t: t[0])
    scored = [(score(b + a), b + a) for _, b, a in best[:keep]]
    scored.sort(key=lambda t: t[0])
    return scored[0]


def find_injection(half):
    even = [2, -2, 4, -4]
    odd = [1, -1, 3, -3]
    # P starts at position 3: sigma_2^odd moves it to the middle, sigma_1^odd at the end to the left
    b_words = list(segments((2,) + (1, 2) * half, [odd] + [even] * (2 * half)))
    a_words = list(segments((1, 2) * half + (1,), [even] * (2 * half) + [odd]))

    def target(k):
        # identity up to the phase 'exp(3 pi i k / 5)' fixed by the sector-0 state
        if k % 10:
            return None
        return np.eye(2) * (1 if k % 20 == 0 else -1)

    def score(word):
        return spectral_distance(three_by_three(word), np.eye(3))[0]

    return meet_in_middle(a_words, b_words, target, score)


def find_flip(half):
    even = [2, -2, 4, -4]
    b_words = list(segments((1, 2) * half, [even] * (2 * half)))
    a_words = list(segments((1, 2) * half, [even] * (2 * half)))
    ix = np.array([[0, 1j], [1j, 0]])

    def score(word):
        return spectral_distance(evaluate(word)[0], np.array([[0, 1], [1, 0]]))[0]

    return meet_in_middle(a_words, b_words, lambda k: ix, score)


def find_phase_fix(phase, half):
    exps = [1, -1, 2, -2, 3, -3, 4, -4]
    b_words = list(segments((1, 2) * half, [exps] * (2 * half)))
    a_words = list(segments((1, 2) * half, [exps] * (2 * half)))
    diag = np.diag([1, phase])
    target = diag / np.sqrt(np.linalg.det(diag))

    def score(word):
        return spectral_distance(evaluate(word)[0], diag)[0]

    return meet_in_middle(a_words, b_words, lambda k: target, score)


def cable(layout, base, word):
    """Strand-level ops for object-level exchanges; ``layout`` holds object widths (1 or 2)."""
    layout = list(layout)
    ops = []
    for g, e in word:
        for _ in range(abs(e)):
            sgn = 1 if e > 0 else -1
            i = base + g - 1
            o = sum(layout[:i])
            w1, w2 = layout[i], layout[i + 1]
            # the moving object crosses strand by strand; the order depends only on widths
            seq = {(1, 1): [o + 1], (1, 2): [o + 1, o + 2], (2, 1): [o + 2, o + 1]}[(w1, w2)]
            ops.extend((n, sgn) for n in seq)
            layout[i], layout[i + 1] = w2, w1
    return ops, layout


def merge(ops):
    out = []
    for n, p in ops:
        if out and out[-1][0] == n:
            p += out[-1][1]
            out.pop()
            if p == 0:
                continue
        out.append((n, p))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--half", type=int, default=3, help="segment pairs per half-word")
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()

    inj_err, inj = find_injection(args.half)
    print(f"injection: {sum(abs(e) for _, e in inj)} exchanges, 3x3 distance {inj_err:.3e}")
    flip_err, flip = find_flip(args.half)
    flip_mat = evaluate(flip)[0]
    _, ph = spectral_distance(flip_mat, np.array([[0, 1], [1, 0]]))
    print(f"flip: {sum(abs(e) for _, e in flip)} exchanges, distance to X up to phase {flip_err:.3e}")
    fix_err, fix = find_phase_fix(ph.conjugate(), args.half)
    print(f"phase fix: {sum(abs(e) for _, e in fix)} exchanges, distance {fix_err:.3e}")

    start = [1, 1, 1, 2, 1]  # t1 t2 t3 P c3
    ops_inj, after = cable(start, 1, inj)
    ops_flip, after2 = cable(after, 0, flip)
    assert after2 == after
    inverse = [(g, -e) for g, e in reversed(inj)]
    ops_back, restored = cable(after, 1, inverse)
    assert restored == start
    ops_fix = [(g + 3, e) for g, e in fix]  # control qubit strands 4, 5, 6
    ops = merge(ops_inj + ops_flip + ops_back + [(n, 1 if e > 0 else -1) for n, e in ops_fix for _ in range(abs(e))])

    space = enumerate_basis(MODEL, 1, 2, 3)
    word = BraidWord.for_space(space, ops)
    for s in (0, 1):
        cmp = compare_gate(space, word, "cnot", s)
        print(f"sector {s}: accuracy {cmp.accuracy:.3e}, leakage {cmp.leakage:.3e}")
    print(f"total: {len(word)} exchanges in {len(word.ops)} runs")
    if args.out:
        comment = (
            "CNOT (second qubit controls NOT on the first) from a weave search: control pair injected into the "
            "target, iX weave, inverse injection, control phase fix. Produced by scripts/search_cnot_weave.py."
        )
        args.out.write_text(word_to_json(word, comment))
        print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
