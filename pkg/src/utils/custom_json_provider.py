from dataclasses import asdict, is_dataclass
from enum import Enum
from pathlib import Path

import numpy as np
from flask.json.provider import DefaultJSONProvider

from src.models.poem import Poem, PoemId
from src.models.run_config import RunConfig


class CustomJSONProvider(DefaultJSONProvider):
    sort_keys = True
    ensure_ascii = False

    def __init__(self, app, *args, **kwargs):
        super().__init__(app, *args, **kwargs)
        self.app = app

    def default(self, o):
        if isinstance(o, RunConfig):
            return o.__dict__

        if isinstance(o, PoemId):
            return {"author": o.author, "work": o.work, "index": o.index}

        if isinstance(o, Poem):
            return {"id": o.id, "lines": o.line_count, "path": o.path}

        if isinstance(o, np.ndarray):
            return o.tolist()

        if isinstance(o, np.generic):
            return o.item()

        if isinstance(o, Path):
            return str(o)

        if isinstance(o, Enum):
            return o.value

        if isinstance(o, (tuple, set, frozenset)):
            return list(o)

        if is_dataclass(o) and not isinstance(o, type):
            return asdict(o)

        return super().default(o)
