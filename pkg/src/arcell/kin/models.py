"""Robot model files: JSON schema, bundled models, load/save."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

import numpy as np

from ..errors import ModelNotFound, ParseError, VersionError
from ..geom import RigidTransform
from .chain import Capsule, Joint, JointType, KinematicChain, LinkGeometry

FORMAT = "arcell/robot"
VERSION = 1

BUNDLED = ("planar2r", "kr6")


def pose_to_dict(t: RigidTransform) -> dict:
    return {
        "position": [float(x) for x in t.translation],
        "quaternion": [float(x) for x in t.quat_xyzw()],
    }


def pose_from_dict(d: dict) -> RigidTransform:
    return RigidTransform.from_quat(d["quaternion"], d["position"])


def chain_to_dict(chain: KinematicChain) -> dict:
    return {
        "format": FORMAT,
        "version": VERSION,
        "name": chain.name,
        "joints": [
            {
                "type": j.type.value,
                "origin": pose_to_dict(j.origin),
                "axis": [float(x) for x in j.axis],
                "limits": [j.limits[0], j.limits[1]],
            }
            for j in chain.joints
        ],
        "links": [
            {
                "capsules": [
                    {"p0": [float(x) for x in c.p0], "p1": [float(x) for x in c.p1], "radius": c.radius}
                    for c in link.capsules
                ],
                "grab_radius": link.grab_radius,
            }
            for link in chain.links
        ],
        "tool": pose_to_dict(chain.tool),
    }


def chain_from_dict(data: dict) -> KinematicChain:
    if data.get("format") != FORMAT:
        raise VersionError(f"expected format {FORMAT!r}, got {data.get('format')!r}")
    if data.get("version") != VERSION:
        raise VersionError(f"unsupported robot model version {data.get('version')!r}")
    joints = tuple(
        Joint(
            type=JointType(j["type"]),
            origin=pose_from_dict(j["origin"]),
            axis=np.asarray(j["axis"], dtype=float),
            limits=(float(j["limits"][0]), float(j["limits"][1])),
        )
        for j in data["joints"]
    )
    links = tuple(
        LinkGeometry(
            capsules=tuple(Capsule(c["p0"], c["p1"], float(c["radius"])) for c in l["capsules"]),
            grab_radius=float(l.get("grab_radius", 0.12)),
        )
        for l in data["links"]
    )
    return KinematicChain(joints=joints, links=links, tool=pose_from_dict(data["tool"]), name=data.get("name", ""))


def save_robot(chain: KinematicChain, path) -> None:
    Path(path).write_text(json.dumps(chain_to_dict(chain), indent=2, sort_keys=True) + "\n")


def load_robot(name_or_path: str) -> KinematicChain:
    """Load a bundled model by name ('planar2r', 'kr6') or any model file by path."""
    name = str(name_or_path)
    if name in BUNDLED:
        text = resources.files("arcell.kin").joinpath(f"models/{name}.json").read_text()
    else:
        p = Path(name)
        if not p.exists():
            raise ModelNotFound(f"unknown robot model {name!r} (bundled: {', '.join(BUNDLED)})")
        text = p.read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"robot model: {exc.msg}", line=exc.lineno, offset=exc.colno) from exc
    return chain_from_dict(data)
