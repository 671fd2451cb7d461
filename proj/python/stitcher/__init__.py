"""Firmware, network-capture, and process-listing correlation toolkit.

Thin convenience layer over the compiled ``_core`` extension: every core
function returns a JSON string, which these wrappers decode into plain
Python objects so callers never touch the serialization format directly.
"""

import json

from ._core import IngestError, UsageError
from ._core import version as _version

from . import _core

__all__ = [
    "IngestError",
    "UsageError",
    "__version__",
    "analyze_manifest",
    "classify_evidence",
    "extract_ports",
    "generate_scenario",
    "parse_ps",
    "process_firmware",
    "version",
]

__version__ = _version()


def version():
    """Return the tool version string."""
    return _version()


def classify_evidence(kind):
    """Classify an evidence kind; returns the standards labels as a dict."""
    return json.loads(_core.classify_evidence(kind))


def process_firmware(path, hash="sha256", min_length=4, workers=1):
    """Ingest a firmware directory tree or tar archive.

    Returns a dict with the directory/file listing, per-file digests, and
    per-file extracted strings.
    """
    return json.loads(_core.process_firmware(str(path), hash, min_length, workers))


def extract_ports(path):
    """Tally destination ports from a classic pcap capture file."""
    return json.loads(_core.extract_ports(str(path)))


def parse_ps(text):
    """Parse ``ps`` output text into a process listing dict."""
    return json.loads(_core.parse_ps(text))


def analyze_manifest(manifest, configuration=3, out_dir="", hash="sha256",
                     min_length=4, workers=1):
    """Run the full pipeline on a case manifest file.

    Returns the report as a dict; when ``out_dir`` is non-empty the JSON and
    text renderings are also written there.
    """
    return json.loads(
        _core.analyze_manifest(str(manifest), configuration, str(out_dir), hash,
                               min_length, workers)
    )


def generate_scenario(out_dir, seed=1, **kwargs):
    """Generate a self-contained synthetic case under ``out_dir``.

    Returns a dict of ground-truth facts (backdoor path, C2 port, and the
    generated manifest paths).
    """
    return json.loads(_core.generate_scenario(str(out_dir), seed, **kwargs))
