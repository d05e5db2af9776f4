"""Truncated q-series engine and claim verifier."""

import json
import os

from ._qseries import *  # noqa: F401,F403
from ._qseries import default_manifest_dir, verify_json, verify_text_json


def manifest_path(name="paper.qsm"):
    return os.path.join(default_manifest_dir(), name)


def verify(path=None, filters=(), jobs=1, runtime=True):
    """Run a manifest and return the parsed report."""
    return json.loads(verify_json(path or manifest_path(), list(filters), jobs, runtime))


def verify_text(text, filters=(), jobs=1, runtime=True):
    return json.loads(verify_text_json(text, list(filters), jobs, runtime))
