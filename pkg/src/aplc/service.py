"""HTTP facade for the playground: /v1/compile, /v1/run, /v1/health."""
from __future__ import annotations

import asyncio
import base64
import binascii

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel
from starlette.concurrency import run_in_threadpool

from .diagnostics import AttachmentRejected, LlmNotConfigured
from .facade import Backend, Compiler, CompileResponse, ErrorInfo
from .runner import RunPolicy, RunResult

MAX_BODY = 1 << 20


class AttachmentIn(BaseModel):
    name: str
    content_base64: str


class CompileIn(BaseModel):
    source: str
    backend: str | None = None


class RunIn(CompileIn):
    attachments: list[AttachmentIn] = []


def _run_result_dict(result: RunResult) -> dict:
    return {
        "stdout": result.stdout,
        "stderr": result.stderr,
        "exit_code": result.exit_code,
        "duration": result.duration,
        "timed_out": result.timed_out,
        "stdout_truncated": result.stdout_truncated,
        "stderr_truncated": result.stderr_truncated,
    }


def _llm_unavailable() -> CompileResponse:
    exc = LlmNotConfigured()
    return CompileResponse(ok=False, error=ErrorInfo.from_exception(exc))


def create_app(deterministic: Compiler | None = None,
               llm_compiler: Compiler | None = None,
               run_policy: RunPolicy | None = None,
               max_concurrency: int = 4) -> FastAPI:
    """Build the service around a deterministic compiler and an optional LLM one."""
    app = FastAPI(title="APL compiler service", version="1")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    policy = run_policy or RunPolicy()
    det = deterministic or Compiler(run_policy=policy)
    compilers: dict[Backend, Compiler | None] = {
        Backend.DETERMINISTIC: det,
        Backend.LLM: llm_compiler,
    }
    run_slots = asyncio.Semaphore(max_concurrency)

    @app.exception_handler(RequestValidationError)
    async def bad_request(_request: Request, exc: RequestValidationError):
        return JSONResponse({"detail": "malformed request body"}, status_code=400)

    @app.middleware("http")
    async def body_limit(request: Request, call_next):
        length = request.headers.get("content-length")
        if length is not None and length.isdigit() and int(length) > MAX_BODY:
            return JSONResponse({"detail": "request body too large"}, status_code=413)
        return await call_next(request)

    @app.get("/v1/health")
    async def health():
        return {"ok": True}

    @app.post("/v1/compile")
    async def compile_endpoint(body: CompileIn):
        try:
            backend = Backend.parse(body.backend)
        except ValueError:
            return JSONResponse({"detail": f"unknown backend: {body.backend}"},
                                status_code=400)
        compiler = compilers[backend]
        if compiler is None:
            return _llm_unavailable().to_dict()
        response = await run_in_threadpool(compiler.compile, body.source)
        return response.to_dict()

    @app.post("/v1/run")
    async def run_endpoint(body: RunIn):
        try:
            backend = Backend.parse(body.backend)
        except ValueError:
            return JSONResponse({"detail": f"unknown backend: {body.backend}"},
                                status_code=400)
        compiler = compilers[backend]
        if compiler is None:
            return {"compile": _llm_unavailable().to_dict(), "run": None}
        attachments = []
        for att in body.attachments:
            try:
                attachments.append((att.name, base64.b64decode(att.content_base64,
                                                               validate=True)))
            except (binascii.Error, ValueError):
                return JSONResponse({"detail": f"attachment {att.name!r} is not valid base64"},
                                    status_code=400)
        try:
            async with run_slots:
                response, result = await run_in_threadpool(
                    compiler.compile_and_run, body.source, attachments)
        except AttachmentRejected as exc:
            return JSONResponse({"detail": str(exc)}, status_code=400)
        return {
            "compile": response.to_dict(),
            "run": _run_result_dict(result) if result is not None else None,
        }

    return app


def serve(bind: str = "127.0.0.1:8080", llm_compiler: Compiler | None = None,
          run_policy: RunPolicy | None = None, max_concurrency: int = 4) -> None:
    """Run the service until interrupted."""
    import uvicorn

    host, _, port = bind.rpartition(":")
    app = create_app(llm_compiler=llm_compiler, run_policy=run_policy,
                     max_concurrency=max_concurrency)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port), log_level="warning")


# `uvicorn aplc.service:app` works with env-driven defaults.
_default_app = None


def __getattr__(name: str):
    global _default_app
    if name == "app":
        if _default_app is None:
            _default_app = create_app()
        return _default_app
    raise AttributeError(name)
