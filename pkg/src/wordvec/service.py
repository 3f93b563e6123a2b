"""HTTP+JSON session API backing the interactive inspector.

Each session wraps a :class:`~wordvec.trainer.TrainingSession` initialized
exactly as CLI training would be (same vocabulary rules, same seeding), so a
CLI run and a service session with identical inputs produce identical
weights. All mutations on a session are serialized by a per-session lock;
reads return consistent snapshots taken between steps.

Endpoints:
    POST   /sessions                      create a session
    POST   /sessions/{id}/step            {"n": int}
    POST   /sessions/{id}/activate        {"ids": [int]}
    GET    /sessions/{id}/state           full snapshot (version, weights, hash)
    GET    /sessions/{id}/pca             2D projection of both vector families
    POST   /sessions/{id}/eta             {"eta": float}
    GET    /sessions/{id}/neighbors?word=&k=
    DELETE /sessions/{id}
"""

from __future__ import annotations

import hashlib
import threading
import uuid
from dataclasses import dataclass, field

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from . import embeddings
from .errors import EmptyVocabulary
from .model import (
    ModelConfig,
    hidden,
    hs_leaf_probabilities,
    sigmoid,
    softmax_forward,
)
from .pca import project_families
from .trainer import TrainPlan, TrainingSession
from .vocab import Vocabulary, build_vocab, tokenize, windows


class CreateSessionRequest(BaseModel):
    corpus: str
    architecture: str = "cbow"
    objective: str = "softmax"
    dim: int = 5
    window: int = 2
    k_negatives: int = 2
    eta: float = 0.2
    seed: int = 0
    min_count: int = 1


class StepRequest(BaseModel):
    n: int = 1


class ActivateRequest(BaseModel):
    ids: list[int]


class EtaRequest(BaseModel):
    eta: float


@dataclass
class SessionBox:
    vocab: Vocabulary
    session: TrainingSession
    version: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)


def _weights_hash(box: SessionBox) -> str:
    digest = hashlib.sha256()
    digest.update(np.ascontiguousarray(box.session.state.input_vectors).tobytes())
    digest.update(np.ascontiguousarray(box.session.state.output_vectors).tobytes())
    return digest.hexdigest()


def _snapshot(box: SessionBox, session_id: str) -> dict:
    s = box.session
    return {
        "id": session_id,
        "version": box.version,
        "words": list(box.vocab.words),
        "counts": list(box.vocab.counts),
        "architecture": s.config.architecture,
        "objective": s.config.objective,
        "dim": s.config.dim,
        "eta": s.eta,
        "epoch": s.epoch,
        "instances_done": s.instances_done,
        "instances_per_epoch": len(s.instances),
        "input_vectors": s.state.input_vectors.tolist(),
        "output_vectors": s.state.output_vectors.tolist(),
        "weights_hash": _weights_hash(box),
    }


def create_app() -> FastAPI:
    app = FastAPI(title="wordvec inspector service")
    # the browser inspector is served separately during development
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    sessions: dict[str, SessionBox] = {}

    def get_box(session_id: str) -> SessionBox:
        box = sessions.get(session_id)
        if box is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return box

    @app.exception_handler(HTTPException)
    async def http_error(request, exc: HTTPException):  # noqa: ANN001
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=exc.status_code, content={"error": exc.detail})

    @app.post("/sessions", status_code=201)
    def create_session(req: CreateSessionRequest):
        tokens = tokenize(req.corpus)
        try:
            vocab = build_vocab(tokens, min_count=req.min_count)
        except (EmptyVocabulary, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        ids = vocab.encode_corpus(tokens)
        try:
            config = ModelConfig(
                vocab_size=len(vocab),
                dim=req.dim,
                architecture=req.architecture,
                objective=req.objective,
                k_negatives=req.k_negatives if req.objective == "ns" else 1,
                eta=req.eta,
            )
            instances = list(windows(ids, req.window, req.architecture))
            plan = TrainPlan(epochs=1, eta0=req.eta, seed=req.seed)
            session = TrainingSession(instances, config, plan, counts=vocab.counts)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        session_id = uuid.uuid4().hex
        box = SessionBox(vocab=vocab, session=session)
        sessions[session_id] = box
        return _snapshot(box, session_id)

    @app.post("/sessions/{session_id}/step")
    def step(session_id: str, req: StepRequest):
        box = get_box(session_id)
        if req.n < 1:
            raise HTTPException(status_code=400, detail="n must be >= 1")
        with box.lock:
            losses = box.session.step_n(req.n)
            box.version += 1
            return {
                "version": box.version,
                "n": req.n,
                "mean_loss": float(np.mean(losses)),
                "losses": [float(x) for x in losses],
            }

    @app.post("/sessions/{session_id}/activate")
    def activate(session_id: str, req: ActivateRequest):
        box = get_box(session_id)
        s = box.session
        v = len(box.vocab)
        if not req.ids or any(i < 0 or i >= v for i in req.ids):
            raise HTTPException(status_code=400, detail="ids must be non-empty and < V")
        with box.lock:
            h = hidden(s.state, req.ids)
            payload = {"version": box.version, "h": h.tolist()}
            if s.config.objective == "softmax":
                u, y = softmax_forward(s.state, h)
                payload["scores"] = u.tolist()
                payload["probabilities"] = y.tolist()
            elif s.config.objective == "ns":
                u = s.state.output_vectors @ h
                payload["scores"] = u.tolist()
                payload["activations"] = sigmoid(u).tolist()
            else:
                probs = hs_leaf_probabilities(s.state, s.tree, h)
                payload["probabilities"] = probs.tolist()
            return payload

    @app.get("/sessions/{session_id}/state")
    def state(session_id: str, version: int | None = None):
        box = get_box(session_id)
        with box.lock:
            return _snapshot(box, session_id)

    @app.get("/sessions/{session_id}/pca")
    def pca(session_id: str):
        box = get_box(session_id)
        with box.lock:
            proj = project_families(
                box.session.state.input_vectors, box.session.state.output_vectors
            )
            return {
                "version": box.version,
                "words": list(box.vocab.words),
                "input": proj.input_coords.tolist(),
                "output": proj.output_coords.tolist(),
                "explained_variance": list(proj.explained_variance),
            }

    @app.post("/sessions/{session_id}/eta")
    def set_eta(session_id: str, req: EtaRequest):
        box = get_box(session_id)
        if req.eta <= 0:
            raise HTTPException(status_code=400, detail="eta must be > 0")
        with box.lock:
            box.session.set_eta(req.eta)
            return {"eta": box.session.eta}

    @app.get("/sessions/{session_id}/neighbors")
    def neighbors(session_id: str, word: str, k: int = 5):
        box = get_box(session_id)
        with box.lock:
            if word not in box.vocab:
                raise HTTPException(status_code=400, detail=f"unknown word {word!r}")
            result = embeddings.nearest_words(
                box.vocab.words, box.session.state.input_vectors, word, k
            )
            return {"word": word, "neighbors": [{"word": w, "similarity": s} for w, s in result]}

    @app.delete("/sessions/{session_id}")
    def delete(session_id: str):
        get_box(session_id)
        del sessions[session_id]
        return {"deleted": session_id}

    return app


app = create_app()


def main() -> None:
    import uvicorn

    uvicorn.run(app, host="127.0.0.1", port=8000)


if __name__ == "__main__":
    main()
