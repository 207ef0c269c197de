"""HTTP API for the interactive shot-design UI.

Sessions hold uploaded scene assets in memory (TTL-evicted); translate is a
pure function of (session assets, design), so identical requests return
identical bodies. All geometry runs through the same library code paths as
the CLI.
"""
from __future__ import annotations

import argparse
import io as _io
import json
import tempfile
import threading
import time
import uuid
import zipfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np
import uvicorn
from fastapi import FastAPI, Form, HTTPException, Request, Response, UploadFile
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import io as mfio
from .errors import MotionForgeError
from .metrics import verify_report
from .pipeline import DEFAULT_POINTS, translate_design
from .types import Intrinsics, SceneContext, default_intrinsics
from .warp import render_preview

MAX_UPLOAD_BYTES = 64 * 1024 * 1024
SESSION_TTL_SECONDS = 3600.0


@dataclass
class TranslateResult:
    design: object
    bundle: object
    path: object
    preview: np.ndarray


@dataclass
class Session:
    ctx: SceneContext
    image: np.ndarray
    created_at: float
    latest: Optional[TranslateResult] = None
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    def __init__(self, ttl=SESSION_TTL_SECONDS):
        self.ttl = ttl
        self._sessions = {}
        self._lock = threading.Lock()

    def create(self, session: Session):
        sid = uuid.uuid4().hex
        with self._lock:
            now = time.monotonic()
            expired = [k for k, s in self._sessions.items()
                       if now - s.created_at > self.ttl]
            for k in expired:
                del self._sessions[k]
            self._sessions[sid] = session
        return sid

    def get(self, sid) -> Session:
        with self._lock:
            session = self._sessions.get(sid)
            if session is None or time.monotonic() - session.created_at > self.ttl:
                self._sessions.pop(sid, None)
                raise HTTPException(status_code=404, detail="unknown session")
            return session

    def delete(self, sid):
        with self._lock:
            if sid not in self._sessions:
                raise HTTPException(status_code=404, detail="unknown session")
            del self._sessions[sid]


def _png_response(frame):
    buf = _io.BytesIO()
    from PIL import Image
    Image.fromarray(frame).save(buf, format="PNG")
    return Response(content=buf.getvalue(), media_type="image/png")


def _load_depth_upload(data: bytes, filename, depth_scale):
    with tempfile.TemporaryDirectory() as tmp:
        suffix = ".png" if data[:2] == b"\x89P" else ".pfm"
        path = Path(tmp) / f"depth{suffix}"
        path.write_bytes(data)
        if suffix == ".png":
            if depth_scale is None:
                raise MotionForgeError("PNG16 depth upload needs a depth_scale form field")
            Path(str(path) + ".scale").write_text(str(float(depth_scale)))
        return mfio.load_depth(path)


def _bundle_response(sid, result: TranslateResult):
    bundle = result.bundle
    L = bundle.frame_count
    return {
        "frame_count": L,
        "fps": bundle.fps,
        "tracks": mfio.tracks_payload(bundle),
        "boxes": mfio.boxes_payload(bundle),
        "coeffs": mfio.coeffs_payload(bundle),
        "warnings": list(bundle.warnings),
        "bbox_frames": [f"/sessions/{sid}/bboxframe/{l}.png" for l in range(L)],
        "preview_frames": [f"/sessions/{sid}/preview/{l}.png" for l in range(L)],
        "bundle_zip": f"/sessions/{sid}/bundle.zip",
    }


def create_app(cors_origin="*") -> FastAPI:
    app = FastAPI(title="motionforge service")
    if cors_origin:
        app.add_middleware(CORSMiddleware, allow_origins=[cors_origin],
                           allow_methods=["*"], allow_headers=["*"])
    store = SessionStore()

    @app.exception_handler(MotionForgeError)
    def _domain_error(request: Request, exc: MotionForgeError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.post("/sessions")
    def create_session(image: UploadFile, depth: UploadFile,
                       masks: Optional[UploadFile] = None,
                       intrinsics: Optional[str] = Form(None),
                       depth_scale: Optional[str] = Form(None)):
        blobs = {"image": image.file.read(), "depth": depth.file.read()}
        if masks is not None:
            blobs["masks"] = masks.file.read()
        if sum(len(b) for b in blobs.values()) > MAX_UPLOAD_BYTES:
            raise HTTPException(status_code=413, detail="upload exceeds 64 MB")

        from PIL import Image
        img = np.asarray(Image.open(_io.BytesIO(blobs["image"])).convert("RGB"))
        depth_grid = _load_depth_upload(blobs["depth"], depth.filename, depth_scale)
        height, width = depth_grid.shape
        if img.shape[:2] != (height, width):
            raise HTTPException(status_code=400,
                                detail="dimension mismatch between image and depth")
        if "masks" in blobs:
            mask = np.asarray(Image.open(_io.BytesIO(blobs["masks"])))
            if mask.ndim != 2:
                raise HTTPException(status_code=400, detail="mask PNG must be single-channel")
            if mask.shape != (height, width):
                raise HTTPException(status_code=400,
                                    detail="dimension mismatch between masks and depth")
            mask = mask.astype(np.int32)
        else:
            mask = np.zeros((height, width), dtype=np.int32)

        if intrinsics is not None:
            vals = json.loads(intrinsics)
            intr = Intrinsics(vals["fx"], vals["fy"], vals["cx"], vals["cy"],
                              width, height)
        else:
            intr = default_intrinsics(width, height)
        ctx = SceneContext(width=width, height=height, depth=depth_grid,
                           moving_mask=mask, intrinsics0=intr)
        sid = store.create(Session(ctx=ctx, image=img, created_at=time.monotonic()))
        return {"session_id": sid}

    def _translate(sid, session: Session, design_doc, points, seed):
        design = mfio.parse_design(design_doc)
        ctx = session.ctx
        if design.intrinsics is not None:
            ctx = SceneContext(width=ctx.width, height=ctx.height, depth=ctx.depth,
                               moving_mask=ctx.moving_mask,
                               intrinsics0=design.intrinsics)
        path, bundle = translate_design(design, ctx, n_points=points, seed=seed)
        preview = render_preview(session.image, ctx, path)
        result = TranslateResult(design=design, bundle=bundle, path=path,
                                 preview=preview)
        with session.lock:
            session.latest = result
        return result

    @app.post("/sessions/{sid}/translate")
    async def translate(sid: str, request: Request,
                        points: int = DEFAULT_POINTS, seed: int = 0):
        session = store.get(sid)
        body = await request.body()
        if len(body) > MAX_UPLOAD_BYTES:
            raise HTTPException(status_code=413, detail="design exceeds 64 MB")
        result = _translate(sid, session, body, points, seed)
        return _bundle_response(sid, result)

    @app.post("/sessions/{sid}/verify")
    async def verify(sid: str, request: Request):
        session = store.get(sid)
        body = await request.body()
        if body:
            design = mfio.parse_design(body)
        else:
            with session.lock:
                if session.latest is None:
                    raise HTTPException(status_code=400,
                                        detail="no design translated yet; send one")
                design = session.latest.design
        with session.lock:
            if session.latest is None:
                raise HTTPException(status_code=400,
                                    detail="no bundle to verify; translate first")
            bundle = session.latest.bundle
        return verify_report(design, session.ctx, bundle)

    @app.get("/sessions/{sid}/preview/{frame}.png")
    def preview_frame(sid: str, frame: int):
        session = store.get(sid)
        with session.lock:
            result = session.latest
        if result is None or not 0 <= frame < result.preview.shape[0]:
            raise HTTPException(status_code=404, detail="unknown frame")
        return _png_response(result.preview[frame])

    @app.get("/sessions/{sid}/bboxframe/{frame}.png")
    def bbox_frame(sid: str, frame: int):
        session = store.get(sid)
        with session.lock:
            result = session.latest
        if result is None or not 0 <= frame < result.bundle.frame_count:
            raise HTTPException(status_code=404, detail="unknown frame")
        return _png_response(result.bundle.bbox_frames[frame])

    @app.get("/sessions/{sid}/bundle.zip")
    def bundle_zip(sid: str):
        session = store.get(sid)
        with session.lock:
            result = session.latest
        if result is None:
            raise HTTPException(status_code=404, detail="translate a design first")
        with tempfile.TemporaryDirectory() as tmp:
            mfio.write_bundle(result.bundle, tmp)
            buf = _io.BytesIO()
            root = Path(tmp)
            with zipfile.ZipFile(buf, "w", zipfile.ZIP_DEFLATED) as zf:
                for file in sorted(root.rglob("*")):
                    if file.is_file():
                        info = zipfile.ZipInfo(str(file.relative_to(root)),
                                               date_time=(1980, 1, 1, 0, 0, 0))
                        info.compress_type = zipfile.ZIP_DEFLATED
                        zf.writestr(info, file.read_bytes())
        return Response(content=buf.getvalue(), media_type="application/zip")

    @app.delete("/sessions/{sid}", status_code=204)
    def delete_session(sid: str):
        store.delete(sid)
        return Response(status_code=204)

    return app


app = create_app()


def main(argv=None):
    parser = argparse.ArgumentParser(prog="motionforge-serve",
                                     description="Run the shot-design HTTP service.")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8787)
    parser.add_argument("--cors-origin", default="*",
                        help="origin allowed to call the API (default any)")
    args = parser.parse_args(argv)
    uvicorn.run(create_app(cors_origin=args.cors_origin),
                host=args.host, port=args.port)


if __name__ == "__main__":
    main()
