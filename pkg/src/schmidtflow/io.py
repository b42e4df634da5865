"""State-file, trace-file and report I/O for the command line front end.

State files: line 1 holds the qubit count n, the next 2**n lines hold
"re im" pairs; '#' starts a comment. Amplitudes are written with repr so a
write/read round trip is exact. Trace files: a ``s,fidelity,grad_norm``
header and one comma-separated sample per line at 15 significant digits.
"""

import numpy as np

from .validation import check_qubit_count


class StateFileError(ValueError):
    """Malformed state file; carries the offending line number."""

    def __init__(self, path, line_no, message):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no


RENORMALIZE_TOL = 1e-6


def read_state_file(path):
    """Parse a state file into (n, amplitudes); renormalizes within 1e-6."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.readlines()

    entries = []  # (line_no, payload)
    for i, line in enumerate(raw, start=1):
        payload = line.split("#", 1)[0].strip()
        if payload:
            entries.append((i, payload))

    if not entries:
        raise StateFileError(path, 1, "empty state file")

    line_no, head = entries[0]
    try:
        n = int(head)
    except ValueError:
        raise StateFileError(path, line_no, f"expected qubit count, got {head!r}") from None
    try:
        check_qubit_count(n)
    except ValueError as exc:
        raise StateFileError(path, line_no, str(exc)) from None

    dim = 2**n
    body = entries[1:]
    if len(body) != dim:
        raise StateFileError(
            path,
            body[-1][0] if body else line_no,
            f"expected {dim} amplitude lines for n = {n}, found {len(body)}",
        )

    amps = np.empty(dim, dtype=complex)
    for j, (ln, payload) in enumerate(body):
        parts = payload.split()
        if len(parts) != 2:
            raise StateFileError(path, ln, f"expected 're im', got {payload!r}")
        try:
            amps[j] = complex(float(parts[0]), float(parts[1]))
        except ValueError:
            raise StateFileError(path, ln, f"could not parse {payload!r}") from None

    nrm = np.linalg.norm(amps)
    if abs(nrm - 1.0) > RENORMALIZE_TOL:
        raise StateFileError(
            path, body[0][0], f"state norm {nrm:.9g} deviates from 1 by more than 1e-6"
        )
    if abs(nrm - 1.0) > 1e-12:  # keep already-normalized amplitudes bit-exact
        amps = amps / nrm
    return n, amps


def write_state_file(path, psi, comment=None):
    psi = np.asarray(psi, dtype=complex).ravel()
    n = int(np.log2(psi.shape[0]))
    with open(path, "w", encoding="utf-8") as fh:
        if comment:
            fh.write(f"# {comment}\n")
        fh.write(f"{n}\n")
        for a in psi:
            fh.write(f"{float(a.real)!r} {float(a.imag)!r}\n")


def write_trace_file(path, trace):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("s,fidelity,grad_norm\n")
        for s, fid, gn in trace.samples:
            fh.write(f"{s:.15g},{fid:.15g},{gn:.15g}\n")


def write_schmidt_report(path, form, bures=None):
    """Key-value report of a canonical form (documented in the README)."""
    lines = [f"n = {form.n}"]
    lines.append("lambdas = " + " ".join(f"{x:.12g}" for x in form.lambdas))
    if form.phase_phi is not None:
        lines.append(f"phase_phi = {form.phase_phi:.12g}")
    lines.append(f"global_phase = {form.global_phase:.12g}")
    lines.append(
        "phase_corrections = " + " ".join(f"{a:.12g}" for a in form.phase_corrections)
    )
    lines.append(f"canonical_maximum = {form.canonical_maximum}")
    lines.append(f"oracle_routed = {form.oracle_routed}")
    if form.flags:
        lines.append("flags = " + " ".join(form.flags))
    if bures is not None:
        lines.append(f"bures = {bures:.12g}")
    lines.append("canonical_state =")
    for a in form.canonical_state:
        lines.append(f"  {float(a.real)!r} {float(a.imag)!r}")
    for k, f in enumerate(form.diagonalizer.factors):
        lines.append(f"diagonalizer_factor_{k} =")
        for row in f:
            lines.append("  " + " ".join(f"{float(z.real)!r} {float(z.imag)!r}" for z in row))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
