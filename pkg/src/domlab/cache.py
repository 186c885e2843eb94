"""
Result records and the on-disk result cache

The cache is an append-only JSON-lines file. Each line is one ResultRecord;
records are keyed by (graph hash, spec, invariant, k, engine version), so bumping
ENGINE_VERSION invalidates every earlier line without rewriting the file.
Certificates name vertices by the labels of the expression that built the
graph: isomorphic graphs from different expressions share a hash, not a record.
"""

import logging
import threading
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from . import ENGINE_VERSION
from .utils.logging import get_structured_logger

logger = logging.getLogger(__name__)
events = get_structured_logger(__name__)

SCHEMA_VERSION = 1

CacheKey = Tuple[str, Optional[str], str, Optional[int], str]


class ResultRecord(BaseModel):
    """One computed result, as printed by --json and stored in the cache"""

    model_config = ConfigDict(extra="forbid")

    schema_version: int = SCHEMA_VERSION
    spec: Optional[str] = Field(None, description="Graph constructor expression")
    graph_hash: str = Field(..., description="Canonical hash of the graph")
    invariant: str = Field(..., description="gamma, eternal, foolproof, autonomous or feasible")
    k: Optional[int] = Field(None, description="Size the record refers to, when applicable")
    value: Optional[Union[bool, int]] = Field(None, description="Computed value; null when unknown")
    status: str = Field("ok", description="ok or unknown (node cap exceeded)")
    certificate: Optional[Dict[str, Any]] = None
    certificate_digest: Optional[str] = None
    engine_version: str = ENGINE_VERSION
    wall_time: float = 0.0

    @property
    def key(self) -> CacheKey:
        return (self.graph_hash, self.spec, self.invariant, self.k, self.engine_version)


class ResultCache:
    """
    JSON-lines result cache

    Unreadable lines are skipped with a warning. Only records with status "ok"
    are stored, since an unknown result depends on the node cap in force.
    """

    def __init__(self, path: Union[str, Path], enabled: bool = True):
        self.path = Path(path)
        self.enabled = enabled
        self._records: Optional[Dict[CacheKey, ResultRecord]] = None
        self._lock = threading.Lock()

    def _load(self) -> Dict[CacheKey, ResultRecord]:
        if self._records is not None:
            return self._records
        records: Dict[CacheKey, ResultRecord] = {}
        if self.path.exists():
            with open(self.path, "r", encoding="utf-8") as f:
                for number, line in enumerate(f, start=1):
                    if not line.strip():
                        continue
                    try:
                        record = ResultRecord.model_validate_json(line)
                    except ValidationError:
                        logger.warning(f"Skipping corrupt cache line {number} in {self.path}")
                        continue
                    records[record.key] = record
            logger.debug(f"Loaded {len(records)} cached records from {self.path}")
        self._records = records
        return records

    def get(
        self, graph_hash: str, spec: Optional[str], invariant: str, k: Optional[int] = None
    ) -> Optional[ResultRecord]:
        if not self.enabled:
            return None
        record = self._load().get((graph_hash, spec, invariant, k, ENGINE_VERSION))
        events.log_cache(record is not None, invariant, graph=graph_hash, k=k)
        return record

    def put(self, record: ResultRecord):
        if not self.enabled or record.status != "ok":
            return
        with self._lock:
            records = self._load()
            if record.key in records:
                return
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as f:
                f.write(record.model_dump_json() + "\n")
            records[record.key] = record

    def __len__(self) -> int:
        return len(self._load())
