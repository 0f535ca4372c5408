"""Command-line frontend: apl compile|run|diff|serve|keywords.

Tool chatter goes to stderr; program output owns stdout. Exit codes:
0 success, 1 compile error, 2 I/O or configuration error, 3 timeout.
For `apl run` a clean execution mirrors the child's exit code.
"""
from __future__ import annotations

import argparse
import difflib
import sys
from pathlib import Path

from .diagnostics import AttachmentRejected, LlmNotConfigured, RunnerError
from .facade import Backend, Compiler, ErrorInfo
from .keywords import DEFAULT_KEYWORDS
from .lexer import SourceFile
from .llm import LlmConfig
from .runner import RunPolicy

EXIT_OK = 0
EXIT_COMPILE = 1
EXIT_IO = 2
EXIT_TIMEOUT = 3


def _stderr(message: str) -> None:
    print(message, file=sys.stderr)


def _report_error(error: ErrorInfo, origin: str) -> None:
    loc = f"{origin}:"
    if error.span is not None:
        loc = f"{origin}:{error.span.line}:{error.span.col}:"
    _stderr(f"{loc} {error.stage.value} error: {error.message_en}")
    _stderr(f"{loc} {error.message_ar}")


def _load_source(path: str) -> SourceFile:
    data = Path(path).read_bytes()
    return SourceFile.from_bytes(data, origin=path)


def _load_attachments(paths: list[str]) -> list[tuple[str, bytes]]:
    out = []
    for p in paths:
        out.append((Path(p).name, Path(p).read_bytes()))
    return out


def _make_compiler(backend: str, timeout: float | None) -> Compiler:
    policy = RunPolicy(timeout=timeout) if timeout else RunPolicy()
    return Compiler(backend=backend, run_policy=policy)


def cmd_compile(args: argparse.Namespace) -> int:
    try:
        src = _load_source(args.path)
    except OSError as exc:
        _stderr(f"cannot read {args.path}: {exc}")
        return EXIT_IO
    try:
        compiler = _make_compiler(args.backend, None)
    except LlmNotConfigured as exc:
        _stderr(str(exc))
        return EXIT_IO
    response = compiler.compile(src)
    if not response.ok:
        _report_error(response.error, args.path)
        return EXIT_COMPILE
    out_path = Path(args.out) if args.out else Path(args.path).with_suffix(".py")
    try:
        out_path.parent.mkdir(parents=True, exist_ok=True)
        out_path.write_text(response.target_text, encoding="utf-8")
    except OSError as exc:
        _stderr(f"cannot write {out_path}: {exc}")
        return EXIT_IO
    _stderr(f"wrote {out_path}")
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    try:
        src = _load_source(args.path)
        attachments = _load_attachments(args.input_file)
    except OSError as exc:
        _stderr(f"cannot read input: {exc}")
        return EXIT_IO
    try:
        compiler = _make_compiler(args.backend, args.timeout)
    except LlmNotConfigured as exc:
        _stderr(str(exc))
        return EXIT_IO
    try:
        response, result = compiler.compile_and_run(src, attachments)
    except (AttachmentRejected, RunnerError) as exc:
        _stderr(str(exc))
        return EXIT_IO
    if not response.ok:
        _report_error(response.error, args.path)
        return EXIT_COMPILE
    sys.stdout.write(result.stdout)
    sys.stdout.flush()
    if result.stderr:
        sys.stderr.write(result.stderr)
    if result.timed_out:
        _stderr(f"timed out after {compiler.run_policy.timeout:g}s")
        return EXIT_TIMEOUT
    if result.exit_code < 0:
        return 128 - result.exit_code
    return result.exit_code


def cmd_diff(args: argparse.Namespace) -> int:
    try:
        src = _load_source(args.path)
        attachments = _load_attachments(args.input_file)
    except OSError as exc:
        _stderr(f"cannot read input: {exc}")
        return EXIT_IO
    policy = RunPolicy(timeout=args.timeout) if args.timeout else RunPolicy()
    cfg = LlmConfig.from_env()
    if not cfg.endpoint_url or not cfg.api_key:
        _stderr("LLM backend is not configured; set APL_LLM_ENDPOINT and APL_LLM_API_KEY")
        return EXIT_IO
    det = Compiler(backend=Backend.DETERMINISTIC, run_policy=policy)
    try:
        llm_side = Compiler(backend=Backend.LLM, llm_config=cfg, run_policy=policy)
    except LlmNotConfigured as exc:
        _stderr(str(exc))
        return EXIT_IO

    def describe(tag, response, result):
        if not response.ok:
            print(f"{tag}: {response.error.stage.value} error: "
                  f"{response.error.message_en}")
            return None
        print(f"{tag}: exit {result.exit_code}"
              f"{' (timed out)' if result.timed_out else ''}")
        return result

    try:
        d_resp, d_run = det.compile_and_run(src, attachments)
        l_resp, l_run = llm_side.compile_and_run(src, attachments)
    except (AttachmentRejected, RunnerError) as exc:
        _stderr(str(exc))
        return EXIT_IO
    d_run = describe("deterministic", d_resp, d_run)
    l_run = describe("llm", l_resp, l_run)
    if d_run is None or l_run is None:
        print("result: backends differ (compile failure)")
        return EXIT_COMPILE
    same = d_run.stdout == l_run.stdout and d_run.exit_code == l_run.exit_code
    if same:
        print("result: behaviorally identical")
        return EXIT_OK
    print("result: behaviors differ")
    diff = difflib.unified_diff(
        d_run.stdout.splitlines(keepends=True),
        l_run.stdout.splitlines(keepends=True),
        fromfile="deterministic", tofile="llm",
    )
    sys.stdout.writelines(diff)
    return EXIT_COMPILE


def cmd_serve(args: argparse.Namespace) -> int:
    from . import service

    llm_compiler = None
    cfg = LlmConfig.from_env()
    if cfg.endpoint_url and cfg.api_key:
        llm_compiler = Compiler(backend=Backend.LLM, llm_config=cfg)
    policy = RunPolicy(timeout=args.timeout) if args.timeout else RunPolicy()
    _stderr(f"serving on {args.bind}")
    service.serve(args.bind, llm_compiler=llm_compiler, run_policy=policy,
                  max_concurrency=args.max_concurrency)
    return EXIT_OK


def cmd_keywords(_args: argparse.Namespace) -> int:
    for entry in DEFAULT_KEYWORDS.entries:
        print(f"{entry.target:<12}{entry.arabic}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="apl",
                                     description="Arabic programming language toolchain")
    sub = parser.add_subparsers(dest="command", required=True)

    p_compile = sub.add_parser("compile", help="translate a .apl file to Python")
    p_compile.add_argument("path")
    p_compile.add_argument("--backend", choices=["deterministic", "llm"],
                           default="deterministic")
    p_compile.add_argument("-o", "--out", default=None)
    p_compile.set_defaults(func=cmd_compile)

    p_run = sub.add_parser("run", help="compile and execute a .apl file")
    p_run.add_argument("path")
    p_run.add_argument("--backend", choices=["deterministic", "llm"],
                       default="deterministic")
    p_run.add_argument("--input-file", action="append", default=[],
                       help="stage a .txt file next to the program (repeatable)")
    p_run.add_argument("--timeout", type=float, default=None)
    p_run.set_defaults(func=cmd_run)

    p_diff = sub.add_parser("diff", help="compare deterministic and LLM backends")
    p_diff.add_argument("path")
    p_diff.add_argument("--input-file", action="append", default=[])
    p_diff.add_argument("--timeout", type=float, default=None)
    p_diff.set_defaults(func=cmd_diff)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--bind", default="127.0.0.1:8080")
    p_serve.add_argument("--timeout", type=float, default=None)
    p_serve.add_argument("--max-concurrency", type=int, default=4)
    p_serve.set_defaults(func=cmd_serve)

    p_kw = sub.add_parser("keywords", help="print the keyword table")
    p_kw.set_defaults(func=cmd_keywords)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
