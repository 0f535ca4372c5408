"""Run generated Python in a throwaway working directory with hard limits.

Each invocation gets its own subdirectory, a scrubbed environment, a process
group kill at timeout, and file-backed capture so big output cannot deadlock.
"""
from __future__ import annotations

import os
import shutil
import signal
import subprocess
import sys
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path

from .codegen import TargetSource
from .diagnostics import AttachmentRejected, InterpreterNotFound, SpawnFailure

SCRIPT_NAME = "main.py"


@dataclass
class RunPolicy:
    timeout: float = 10.0
    workdir: str | os.PathLike | None = None
    interpreter_path: str = sys.executable
    max_output: int = 1 << 20
    keep: bool = False
    stdin_text: str | None = None

    def __post_init__(self):
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")
        if self.max_output <= 0:
            raise ValueError("max_output must be positive")


@dataclass
class RunResult:
    stdout: str
    stderr: str
    exit_code: int
    duration: float
    timed_out: bool
    stdout_truncated: bool = False
    stderr_truncated: bool = False
    run_dir: str | None = field(default=None, repr=False)


def _check_attachment_name(name: str) -> None:
    if (not name or name != os.path.basename(name) or name.startswith(".")
            or "/" in name or "\\" in name):
        raise AttachmentRejected(f"attachment name must be a bare file name: {name!r}")
    if not name.endswith(".txt"):
        raise AttachmentRejected(f"only .txt attachments are allowed: {name!r}")


def _read_capped(path: Path, cap: int) -> tuple[str, bool]:
    data = path.read_bytes()
    truncated = len(data) > cap
    return data[:cap].decode("utf-8", errors="replace"), truncated


def run(code: TargetSource, policy: RunPolicy | None = None,
        attachments: list[tuple[str, bytes]] | tuple = ()) -> RunResult:
    """Execute code.text under the policy; attachments land beside the script."""
    policy = policy or RunPolicy()
    for name, _ in attachments:
        _check_attachment_name(name)

    interpreter = shutil.which(policy.interpreter_path)
    if interpreter is None:
        raise InterpreterNotFound(policy.interpreter_path)

    base = os.fspath(policy.workdir) if policy.workdir is not None else tempfile.gettempdir()
    run_dir = Path(tempfile.mkdtemp(prefix="apl-run-", dir=base))
    try:
        (run_dir / SCRIPT_NAME).write_text(code.text, encoding="utf-8")
        for name, content in attachments:
            (run_dir / name).write_bytes(content)

        env = {
            "PATH": os.environ.get("PATH", "/usr/bin:/bin"),
            "LANG": "C.UTF-8",
            "LC_ALL": "C.UTF-8",
            "PYTHONIOENCODING": "utf-8",
        }
        out_path = run_dir / ".stdout"
        err_path = run_dir / ".stderr"
        start = time.monotonic()
        with open(out_path, "wb") as out_f, open(err_path, "wb") as err_f:
            try:
                proc = subprocess.Popen(
                    [interpreter, SCRIPT_NAME],
                    cwd=run_dir,
                    stdout=out_f,
                    stderr=err_f,
                    stdin=subprocess.PIPE if policy.stdin_text is not None
                    else subprocess.DEVNULL,
                    env=env,
                    start_new_session=True,
                )
            except OSError as exc:
                raise SpawnFailure(str(exc)) from exc
            timed_out = False
            try:
                if policy.stdin_text is not None:
                    proc.communicate(policy.stdin_text.encode("utf-8"),
                                     timeout=policy.timeout)
                else:
                    proc.wait(timeout=policy.timeout)
            except subprocess.TimeoutExpired:
                timed_out = True
                try:
                    os.killpg(proc.pid, signal.SIGKILL)
                except ProcessLookupError:
                    pass
                proc.wait()
        duration = time.monotonic() - start

        stdout, out_trunc = _read_capped(out_path, policy.max_output)
        stderr, err_trunc = _read_capped(err_path, policy.max_output)
        return RunResult(
            stdout=stdout,
            stderr=stderr,
            exit_code=proc.returncode,
            duration=duration,
            timed_out=timed_out,
            stdout_truncated=out_trunc,
            stderr_truncated=err_trunc,
            run_dir=str(run_dir) if policy.keep else None,
        )
    finally:
        if not policy.keep:
            shutil.rmtree(run_dir, ignore_errors=True)
