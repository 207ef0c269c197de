"""Round-trip verification: DLT pose recovery from emitted tracks and the
camera/object control-quality metrics."""
from __future__ import annotations

import numpy as np

from .errors import DegenerateConfigurationError, LengthMismatchError
from .types import CameraPath, Extrinsics, Intrinsics

MIN_CORRESPONDENCES = 6


def recover_pose(world_points, pixels, intrinsics: Intrinsics) -> Extrinsics:
    """Estimate world-to-camera extrinsics from 2D-3D correspondences.

    Linear 12-parameter DLT on K-normalized pixels, rotation snapped to the
    nearest orthogonal factor (det +1), translation scaled by the linear
    solution's singular values. Needs >= 6 points in general position.
    """
    X = np.asarray(world_points, dtype=np.float64).reshape(-1, 3)
    px = np.asarray(pixels, dtype=np.float64).reshape(-1, 2)
    n = X.shape[0]
    if n != px.shape[0]:
        raise LengthMismatchError("points and pixels differ in count")
    if n < MIN_CORRESPONDENCES:
        raise DegenerateConfigurationError(
            f"need at least {MIN_CORRESPONDENCES} correspondences, got {n}")

    xn = (px[:, 0] - intrinsics.cx) / intrinsics.fx
    yn = (px[:, 1] - intrinsics.cy) / intrinsics.fy

    hom = np.hstack([X, np.ones((n, 1))])
    m = np.zeros((2 * n, 12))
    m[0::2, 0:4] = hom
    m[0::2, 8:12] = -xn[:, None] * hom
    m[1::2, 4:8] = hom
    m[1::2, 8:12] = -yn[:, None] * hom

    _, s, vt = np.linalg.svd(m)
    if s[-2] <= 1e-9 * s[0]:
        raise DegenerateConfigurationError(
            "correspondences are degenerate (rank-deficient DLT system)")
    p = vt[-1].reshape(3, 4)

    # points sit in front of the camera; flip the projective sign accordingly
    depths = hom @ p[2]
    if np.sum(depths > 0) < n / 2:
        p = -p

    a = p[:, :3]
    u, sv, vt2 = np.linalg.svd(a)
    d = np.sign(np.linalg.det(u @ vt2))
    rotation = u @ np.diag([1.0, 1.0, d]) @ vt2
    scale = sv.mean()
    if scale <= 0:
        raise DegenerateConfigurationError("pose scale collapsed to zero")
    translation = p[:, 3] / scale
    return Extrinsics(rotation, translation)


def reprojection_rms(pose: Extrinsics, world_points, pixels,
                     intrinsics: Intrinsics):
    """RMS pixel error of world points projected through a recovered pose."""
    X = np.asarray(world_points, dtype=np.float64).reshape(-1, 3)
    px = np.asarray(pixels, dtype=np.float64).reshape(-1, 2)
    cam = pose.apply(X)
    u = intrinsics.cx + intrinsics.fx * cam[:, 0] / cam[:, 2]
    v = intrinsics.cy + intrinsics.fy * cam[:, 1] / cam[:, 2]
    err = np.stack([u, v], axis=-1) - px
    return float(np.sqrt(np.mean(np.sum(err ** 2, axis=1))))


def _normalized_translations(extrinsics_list):
    t = np.stack([e.translation for e in extrinsics_list])
    norm = np.linalg.norm(t, axis=1).max()
    if norm == 0:
        norm = 1.0
    return t / norm


def camera_errors(gt: CameraPath, est):
    """(rot_err, trans_err, cam_mc) between a ground-truth path and estimated
    per-frame extrinsics.

    rot_err sums the per-frame relative rotation angles (radians); trans_err
    sums distances between translation sequences after each is normalized by
    its own max norm; cam_mc sums Frobenius norms of the [R|t] differences
    under the same normalization.
    """
    est = list(est)
    if len(gt) != len(est):
        raise LengthMismatchError(f"path length {len(gt)} vs estimates {len(est)}")
    gt_ext = [gt.extrinsics(l) for l in range(len(gt))]

    rot_err = 0.0
    for g, e in zip(gt_ext, est):
        cosang = (np.trace(g.rotation @ e.rotation.T) - 1.0) / 2.0
        rot_err += float(np.arccos(np.clip(cosang, -1.0, 1.0)))

    t_gt = _normalized_translations(gt_ext)
    t_est = _normalized_translations(est)
    trans_err = float(np.linalg.norm(t_gt - t_est, axis=1).sum())

    cam_mc = 0.0
    for g, e, tg, te in zip(gt_ext, est, t_gt, t_est):
        diff = np.hstack([g.rotation - e.rotation, (tg - te)[:, None]])
        cam_mc += float(np.linalg.norm(diff))
    return rot_err, trans_err, cam_mc


def obj_mc(generated, target):
    """Mean per-frame Euclidean pixel distance between two tracks."""
    a = np.asarray(generated, dtype=np.float64).reshape(-1, 2)
    b = np.asarray(target, dtype=np.float64).reshape(-1, 2)
    if a.shape != b.shape:
        raise LengthMismatchError(f"track shapes differ: {a.shape} vs {b.shape}")
    return float(np.mean(np.linalg.norm(a - b, axis=1)))


def verify_report(design, ctx, bundle):
    """Round-trip report for a stored bundle against its design.

    Camera poses are recovered per frame from the bundle's camera tracks
    (lifted at their frame-0 depths) and scored against the design's path;
    object signals are recomputed from the design and compared by obj_mc.
    Pose metrics are None when fewer than 6 camera tracks exist.
    """
    from .pipeline import build_camera_path, translate_design
    from .warp import bilinear_depth, unproject

    path = build_camera_path(design, ctx.intrinsics0)
    report = {"rot_err": None, "trans_err": None, "cam_mc": None,
              "obj_mc": 0.0, "reproj_rms": None}

    tracks = bundle.camera_tracks
    if len(tracks) >= MIN_CORRESPONDENCES:
        starts = np.stack([t.positions[0] for t in tracks])
        world = unproject(starts, bilinear_depth(ctx, starts), ctx.intrinsics0)
        positions = np.stack([t.positions for t in tracks], axis=1)  # (L, n, 2)
        visible = np.stack([t.visible for t in tracks], axis=1)
        est, rms = [], []
        for l in range(len(path)):
            keep = visible[l] if visible[l].sum() >= MIN_CORRESPONDENCES else slice(None)
            pose = recover_pose(world[keep], positions[l][keep], path.intrinsics(l))
            est.append(pose)
            rms.append(reprojection_rms(pose, world[keep], positions[l][keep],
                                        path.intrinsics(l)))
        rot, trans, cmc = camera_errors(path, est)
        report.update(rot_err=rot, trans_err=trans, cam_mc=cmc,
                      reproj_rms=float(np.mean(rms)))

    _, fresh = translate_design(design, ctx, n_points=0)
    pairs = []
    for stored, ref in zip(bundle.screen_boxes, fresh.screen_boxes):
        pairs.append(obj_mc(stored.track.boxes[:, :2], ref.track.boxes[:, :2]))
    for stored, ref in zip(bundle.local_tracks, fresh.local_tracks):
        pairs.append(obj_mc(stored.positions, ref.positions))
    if pairs:
        report["obj_mc"] = float(np.mean(pairs))
    return report
