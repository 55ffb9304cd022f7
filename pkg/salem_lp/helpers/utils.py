import hashlib
import json
import math
import random
import string
from datetime import datetime, timezone
from importlib import metadata

import numpy as np


def random_str(length: int = 5):
    letters = string.ascii_letters + string.digits
    result_str = ''.join(random.choice(letters) for i in range(length))
    return result_str


def json_safe(obj):
    """Converts numpy scalars and arrays, complex numbers and infinities into plain JSON values."""
    if isinstance(obj, dict):
        return {str(k): json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [json_safe(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return json_safe(obj.tolist())
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        value = float(obj)
        if math.isnan(value):
            return None
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def config_hash(payload: dict) -> str:
    canonical = json.dumps(json_safe(payload), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def library_version() -> str:
    try:
        return metadata.version("salem-lp")
    except metadata.PackageNotFoundError:
        return "0.0.0+local"


def utc_timestamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")
