from typing import Optional

from pydantic import BaseModel


class ErrorReport(BaseModel):
    error: str
    detail: Optional[str] = None
    error_code: Optional[str] = None


class ArtifactHeader(BaseModel):
    tool: str
    version: str
    config_hash: str
    seed: Optional[int] = None
