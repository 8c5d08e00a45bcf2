"""Single-pair evaluation: verdicts, discrete-series conclusions and rendering."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .classify import (
    DiscConclusion,
    DiscGH,
    SOBlockSpec,
    classify_so_pair,
    conclude_from_corollary,
    disc_nonempty_ambient,
)
from .engine import CriterionVerdict, decide_strict, decide_tempered, rho_eval
from .geometry import DEFAULT_CAP
from .specio import rational, spec_to_dict
from .weights import SL, SO, PairSpec, RestrictedPairData, SLBlocks, SOBlocks, WeightMultiset


def is_semisimple(group) -> bool:
    if isinstance(group, SL):
        return group.n >= 2
    return group.p + group.q >= 3


@dataclass
class Report:
    spec: PairSpec
    data: RestrictedPairData
    tempered: CriterionVerdict
    strict: CriterionVerdict
    semisimple: bool
    corollary: DiscConclusion
    classifier: DiscConclusion | None = None
    notes: list[str] = field(default_factory=list)
    elapsed: float | None = None

    @property
    def square_integrable(self) -> str:
        return "yes" if self.strict.holds else "unknown"

    @property
    def disc_GH(self) -> DiscGH:
        return self.classifier.disc_GH if self.classifier else self.corollary.disc_GH

    def to_dict(self, verbose_weights: bool = False) -> dict:
        out = {
            "spec": spec_to_dict(self.spec),
            "pair": self.spec.describe(),
            "dim_a": self.data.dim_a,
        }
        if verbose_weights:
            out["weights"] = {
                name: _weights_dict(getattr(self.data, f"{name}_weights")) for name in ("g", "h", "q")
            }
        out["tempered"] = _verdict_dict(self.tempered, self.data)
        out["tempered"]["semisimple_ambient"] = self.semisimple
        out["strict"] = _verdict_dict(self.strict, self.data)
        out["square_integrable"] = self.square_integrable
        out["disc"] = {
            "disc_G": self.corollary.disc_G.value,
            "disc_GH": self.disc_GH.value,
            "corollary": _conclusion_dict(self.corollary),
            "classifier": _conclusion_dict(self.classifier) if self.classifier else None,
        }
        out["notes"] = list(self.notes)
        if self.elapsed is not None:
            out["timing_ms"] = round(self.elapsed * 1000, 3)
        return out


def _weights_dict(w: WeightMultiset) -> dict:
    return {
        "weights": [[[rational(x) for x in lf.coeffs], m] for lf, m in w.items],
        "zero_count": w.zero_count,
    }


def _verdict_dict(v: CriterionVerdict, data: RestrictedPairData) -> dict:
    out = {"status": v.status.value, "test_rays": v.ray_count}
    if v.holds:
        out["certificate"] = [
            {"ray": list(r), "rho_g": rational(g), "rho_q": rational(q)} for r, g, q in v.certificate
        ]
    else:
        y = v.witness
        g = rho_eval(data.g_weights, y)
        q = rho_eval(data.q_weights, y)
        verified = g >= 2 * q if v.criterion == "strict" else g > 2 * q
        out["witness"] = {
            "vector": [rational(x) for x in y],
            "kind": v.witness_kind,
            "rho_g": rational(g),
            "rho_q": rational(q),
            "verified": bool(verified and any(y)),
        }
    return out


def _conclusion_dict(c: DiscConclusion) -> dict:
    return {
        "disc_G": c.disc_G.value,
        "disc_GH": c.disc_GH.value,
        "justification": c.justification,
        "flags": list(c.flags),
    }


def _is_sl3_sl2(spec: PairSpec) -> bool:
    s = spec.subgroup
    return (
        isinstance(spec.ambient, SL)
        and spec.ambient.n == 3
        and isinstance(s, SLBlocks)
        and sorted(k for k in s.parts if k > 1) == [2]
    )


def run_check(spec: PairSpec, cap: int = DEFAULT_CAP, timing: bool = False) -> Report:
    """Evaluate one pair.  Raises ResourceLimit if the ray budget is exhausted."""
    start = time.perf_counter()
    data = spec.build()
    tempered = decide_tempered(data, cap)
    strict = decide_strict(data, cap)
    disc_g = disc_nonempty_ambient(spec.ambient)
    corollary = conclude_from_corollary(strict, disc_g, compact_h=data.dim_a == 0)
    classifier = None
    notes = []
    if isinstance(spec.subgroup, SOBlocks):
        classifier = classify_so_pair(SOBlockSpec.normalized(spec.ambient.p, spec.ambient.q, spec.subgroup.blocks))
        if "padded-complement" in classifier.flags:
            notes.append("symmetric-pair detection used the trivial complement block (padding convention)")
        if "max-block-tie" in classifier.flags:
            notes.append("several largest blocks tie with differing compactness; first block chosen by p_k descending")
        if corollary.disc_GH is DiscGH.EMPTY and classifier.disc_GH is DiscGH.NONEMPTY:
            notes.append("INCONSISTENT: corollary gives an empty discrete series but the classifier does not")
    semisimple = is_semisimple(spec.ambient)
    if not semisimple:
        notes.append("ambient group is not semisimple: the tempered verdict is the inequality only")
    if tempered.holds and not strict.holds and data.dim_a and tempered.equality_everywhere():
        notes.append("rho_g = 2 rho_q on all of a: boundary case, the strict criterion is inconclusive")
    if _is_sl3_sl2(spec):
        notes.append("L^2(SL(3,R)/SL(2,R)) is known to be square integrable although rho_g = 2 rho_q")
    elapsed = time.perf_counter() - start if timing else None
    return Report(spec, data, tempered, strict, semisimple, corollary, classifier, notes, elapsed)


def render_text(report: Report, verbose_weights: bool = False) -> str:
    d = report.to_dict(verbose_weights)
    lines = [f"pair: {d['pair']}", f"dim a: {d['dim_a']}"]
    if verbose_weights:
        for name in ("g", "h", "q"):
            w = d["weights"][name]
            body = ", ".join(f"{_fmt_vec(v)}:{m}" for v, m in w["weights"]) or "(none)"
            lines.append(f"  {name} weights: {body}  [zero weight x{w['zero_count']}]")
    for key, label in (("tempered", "rho_g <= 2 rho_q"), ("strict", "rho_g < 2 rho_q off 0")):
        v = d[key]
        line = f"{key}: {v['status']} ({label}; {v['test_rays']} test rays)"
        if "witness" in v:
            w = v["witness"]
            line += (
                f"; witness {_fmt_vec(w['vector'])} [{w['kind']}]"
                f" rho_g={w['rho_g']} rho_q={w['rho_q']} verified={w['verified']}"
            )
        lines.append(line)
    lines.append(f"square integrable: {d['square_integrable']}")
    disc = d["disc"]
    lines.append(f"Disc(G): {disc['disc_G']}")
    lines.append(f"Disc(G/H) by inclusion: {disc['corollary']['disc_GH']} ({disc['corollary']['justification']})")
    if disc["classifier"]:
        c = disc["classifier"]
        lines.append(f"Disc(G/H) by classification: {c['disc_GH']} ({c['justification']})")
    for note in d["notes"]:
        lines.append(f"note: {note}")
    if "timing_ms" in d:
        lines.append(f"time: {d['timing_ms']} ms")
    return "\n".join(lines) + "\n"


def _fmt_vec(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"
