"""Command-line front end.

Reads an instance (JSON file or flags), solves it and writes a JSON
solution record; optionally writes sampled trajectories as CSV.

Exit codes: 0 success, 2 invalid instance or arguments, 1 internal error
(including oracle disagreement under ``--check-oracle``).
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from concurrent.futures import ProcessPoolExecutor

import jsonschema
import numpy as np

from .geometry import Configuration, Frame, TargetMotion, rollout, target_position, terminal
from .mtip import drift_ground_track, solve_drift, solve_mtip
from .oracle import OracleConfig, mtip_oracle

log = logging.getLogger(__name__)

SIG = 12
ORACLE_TOL = 2e-3

_pair = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}

INSTANCE_SCHEMA = {
    "type": "object",
    "properties": {
        "mode": {"enum": ["intercept", "drift"]},
        "rho": {"type": "number", "exclusiveMinimum": 0},
        "speed": {"type": "number", "exclusiveMinimum": 0},
        "start": {
            "type": "object",
            "properties": {"x": {"type": "number"}, "y": {"type": "number"}, "theta_deg": {"type": "number"}},
            "additionalProperties": False,
        },
        "target": {
            "type": "object",
            "properties": {"p0": _pair, "v": _pair},
            "required": ["p0", "v"],
            "additionalProperties": False,
        },
        "terminal": _pair,
        "wind": _pair,
        "name": {"type": "string"},
    },
    "required": ["mode"],
    "additionalProperties": False,
    "allOf": [
        {"if": {"properties": {"mode": {"const": "intercept"}}}, "then": {"required": ["target"]}},
        {"if": {"properties": {"mode": {"const": "drift"}}}, "then": {"required": ["terminal", "wind"]}},
    ],
}

BATCH_SCHEMA = {
    "type": "object",
    "properties": {"instances": {"type": "array", "items": INSTANCE_SCHEMA}},
    "required": ["instances"],
}


class InvalidInstance(ValueError):
    pass


def _num(x: float) -> float:
    return float(f"{float(x):.{SIG}g}")


def _round_tree(obj):
    if isinstance(obj, float):
        return _num(obj)
    if isinstance(obj, dict):
        return {k: _round_tree(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_tree(v) for v in obj]
    return obj


def dumps(doc) -> str:
    return json.dumps(_round_tree(doc), indent=2) + "\n"


def validate_instance(inst: dict) -> dict:
    try:
        jsonschema.validate(inst, INSTANCE_SCHEMA)
    except jsonschema.ValidationError as e:
        raise InvalidInstance(e.message) from None
    return inst


def _frame(inst) -> Frame:
    s = inst.get("start", {})
    start = Configuration(s.get("x", 0.0), s.get("y", 0.0), math.radians(s.get("theta_deg", 90.0)))
    return Frame(start, inst.get("speed", 1.0))


def solve_instance(inst: dict, sample_dt: float | None = None, with_traj: bool = False):
    """Solve one validated instance; returns (record, trajectories or None)."""
    rho = float(inst.get("rho", 1.0))
    frame = _frame(inst)
    try:
        if inst["mode"] == "intercept":
            m = frame.target_to_local(inst["target"]["p0"], inst["target"]["v"])
            sol = solve_mtip(m, rho)
            ground = None
        else:
            goal = frame.point_to_local(inst["terminal"])
            wind = frame.vector_to_local(inst["wind"])
            drift = solve_drift(goal, wind, rho, sample_dt)
            sol = drift.solution
            m = TargetMotion(goal, (-wind[0], -wind[1]))
            ground = drift.ground_track
    except ValueError as e:
        raise InvalidInstance(str(e)) from None

    c = sol.candidate
    end = terminal(c.path)
    hit = target_position(m, c.t)
    world_point = frame.point_to_world(c.terminal) if ground is None else tuple(inst["terminal"])
    record = {
        "mode": inst["mode"],
        "t_m": frame.time_to_world(sol.t_m),
        "family": c.family,
        "word": c.word,
        "segments": [{"kind": s.kind, "magnitude": s.magnitude} for s in c.path.segments],
        "intercept_point": list(world_point),
        "region": c.region.tag,
        "side": c.region.side,
        "mirrored": bool(c.mirrored),
        "verified": bool(sol.verified),
        "residuals": {
            "rollout": math.hypot(end.x - hit[0], end.y - hit[1]),
            "fixed_point": abs(c.t - c.path.length),
        },
    }
    if "name" in inst:
        record = {"name": inst["name"], **record}
    if not with_traj:
        return record, None
    trajs = _trajectories(frame, sol, m, ground, sample_dt, rho)
    return record, trajs


def _to_world(frame: Frame, traj: np.ndarray) -> np.ndarray:
    out = traj.copy()
    c, s = math.cos(-frame._rot), math.sin(-frame._rot)
    out[:, 0] = traj[:, 0] / frame.speed
    out[:, 1] = frame.start.x + c * traj[:, 1] - s * traj[:, 2]
    out[:, 2] = frame.start.y + s * traj[:, 1] + c * traj[:, 2]
    out[:, 3] = traj[:, 3] - frame._rot
    return out


def _trajectories(frame, sol, m, ground, sample_dt, rho):
    if ground is not None:
        pursuer = ground
        ts = ground[:, 0]
        target = np.column_stack([ts, np.full_like(ts, m.p0[0]), np.full_like(ts, m.p0[1]), np.zeros_like(ts), np.zeros_like(ts)])
    else:
        _, pursuer = rollout(sol.candidate.path, sample_dt)
        ts = pursuer[:, 0]
        heading = math.atan2(m.v[1], m.v[0]) if m.speed > 0 else 0.0
        target = np.column_stack([ts, m.p0[0] + m.v[0] * ts, m.p0[1] + m.v[1] * ts, np.full_like(ts, heading), np.zeros_like(ts)])
    return _to_world(frame, pursuer), _to_world(frame, target)


def write_csv(path: str, traj: np.ndarray) -> None:
    with open(path, "w") as fh:
        fh.write("t,x,y,theta,u\n")
        for row in traj:
            fh.write(",".join(f"{v:.{SIG}g}" for v in row) + "\n")


def _target_path(path: str) -> str:
    stem, dot, ext = path.rpartition(".")
    return f"{stem}_target.{ext}" if dot else path + "_target"


def generate_instances(n: int, seed: int) -> list[dict]:
    """Random intercept instances: p0 in [-6, 6]^2, target speed <= 0.8."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(n):
        p0 = rng.uniform(-6.0, 6.0, 2)
        speed = 0.8 * math.sqrt(rng.uniform())
        ang = rng.uniform(0.0, 2 * math.pi)
        v = [speed * math.cos(ang), speed * math.sin(ang)]
        out.append({"name": f"r{i:04d}", "mode": "intercept", "rho": 1.0,
                    "target": {"p0": [_num(p0[0]), _num(p0[1])], "v": [_num(v[0]), _num(v[1])]}})
    return out


def _batch_item(args):
    inst, check = args
    try:
        rec, _ = solve_instance(validate_instance(inst))
    except InvalidInstance as e:
        return {"name": inst.get("name"), "error": str(e)}
    if check:
        if inst["mode"] == "intercept":
            frame = _frame(inst)
            m = frame.target_to_local(inst["target"]["p0"], inst["target"]["v"])
        else:
            frame = _frame(inst)
            w = frame.vector_to_local(inst["wind"])
            m = TargetMotion(frame.point_to_local(inst["terminal"]), (-w[0], -w[1]))
        t_o = frame.time_to_world(mtip_oracle(m, float(inst.get("rho", 1.0)), OracleConfig()))
        rec["oracle"] = {"t": t_o, "diff": abs(rec["t_m"] - t_o), "ok": abs(rec["t_m"] - t_o) <= ORACLE_TOL}
    return rec


def run_batch(instances: list[dict], check: bool, jobs: int = 1) -> list[dict]:
    """Solve many instances; output order matches input order."""
    work = [(inst, check) for inst in instances]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            return list(ex.map(_batch_item, work, chunksize=8))
    return [_batch_item(w) for w in work]


def _summary(results: list[dict]) -> str:
    n = len(results)
    errors = sum("error" in r for r in results)
    lines = [f"{'instances':<12}{n:>8}", f"{'errors':<12}{errors:>8}"]
    checked = [r["oracle"] for r in results if "oracle" in r]
    if checked:
        diffs = np.array([c["diff"] for c in checked])
        bad = sum(not c["ok"] for c in checked)
        lines += [
            f"{'checked':<12}{len(checked):>8}",
            f"{'mismatches':<12}{bad:>8}",
            f"{'max |dt|':<12}{diffs.max():>8.2e}",
            f"{'mean |dt|':<12}{diffs.mean():>8.2e}",
        ]
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dubins-intercept", description="Minimum-time Dubins intercept solver.")
    p.add_argument("instance", nargs="?", help="instance JSON file ('-' for stdin)")
    p.add_argument("--mode", choices=["intercept", "drift"])
    p.add_argument("--rho", type=float)
    p.add_argument("--target-p0", type=float, nargs=2, metavar=("X", "Y"))
    p.add_argument("--target-v", type=float, nargs=2, metavar=("VX", "VY"))
    p.add_argument("--terminal", type=float, nargs=2, metavar=("X", "Y"))
    p.add_argument("--wind", type=float, nargs=2, metavar=("WX", "WY"))
    p.add_argument("--out", help="solution output path (default stdout)")
    p.add_argument("--traj", help="pursuer trajectory CSV; target goes to <name>_target.<ext>")
    p.add_argument("--sample-dt", type=float, help="trajectory sample step (default rho/100)")
    p.add_argument("--batch", help="JSON file with an 'instances' list")
    p.add_argument("--check-oracle", action="store_true", help="compare each batch result with the grid oracle")
    p.add_argument("--generate", type=int, metavar="N", help="write N random instances as a batch file and exit")
    p.add_argument("--seed", type=int, default=0, help="seed for --generate")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for --batch")
    return p


def _instance_from_args(a) -> dict:
    if a.instance:
        fh = sys.stdin if a.instance == "-" else open(a.instance)
        with fh:
            inst = json.load(fh)
    else:
        inst = {}
    if a.mode:
        inst["mode"] = a.mode
    if a.rho is not None:
        inst["rho"] = a.rho
    if a.target_p0 or a.target_v:
        tgt = inst.setdefault("target", {})
        if a.target_p0:
            tgt["p0"] = list(a.target_p0)
        if a.target_v:
            tgt["v"] = list(a.target_v)
    if a.terminal:
        inst["terminal"] = list(a.terminal)
    if a.wind:
        inst["wind"] = list(a.wind)
    if "mode" not in inst:
        inst["mode"] = "drift" if "terminal" in inst else "intercept"
    return inst


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        if a.sample_dt is not None and not a.sample_dt > 0:
            raise InvalidInstance("--sample-dt must be positive")
        if a.generate is not None:
            if a.generate < 0:
                raise InvalidInstance("--generate needs N >= 0")
            _emit(dumps({"instances": generate_instances(a.generate, a.seed)}), a.out)
            return 0
        if a.batch:
            with open(a.batch) as fh:
                doc = json.load(fh)
            try:
                jsonschema.validate(doc, BATCH_SCHEMA)
            except jsonschema.ValidationError as e:
                raise InvalidInstance(e.message) from None
            results = run_batch(doc["instances"], a.check_oracle, a.jobs)
            _emit(dumps({"results": results}), a.out)
            print(_summary(results), file=sys.stderr if not a.out else sys.stdout)
            if any("error" in r for r in results):
                return 2
            if any(not r["oracle"]["ok"] for r in results if "oracle" in r):
                return 1
            return 0
        inst = validate_instance(_instance_from_args(a))
        record, trajs = solve_instance(inst, a.sample_dt, with_traj=bool(a.traj))
        _emit(dumps(record), a.out)
        if a.traj:
            write_csv(a.traj, trajs[0])
            write_csv(_target_path(a.traj), trajs[1])
        return 0
    except (InvalidInstance, json.JSONDecodeError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # noqa: BLE001
        log.exception("internal error")
        print(f"internal error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
