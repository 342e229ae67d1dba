"""
schemas.py

Pydantic models for everything pmatrixcheck writes to disk or reads back:
the four certificate kinds and the pipeline report.

Rationals are carried as exact ``Fraction`` values in memory and serialized
as "p/q" strings ("p" for integers), so a certificate written by one command
re-verifies bit-exactly in another.

CERTIFICATE KINDS
-----------------
    cut             side labels in {1,2} per vertex and the claimed cut size
    norm-witness    sign vectors y, z with the claimed value z^T A y
    singular-matrix an exact matrix B claimed singular and inside an interval
    non-p-minor     a 1-based index set with its claimed non-positive minor

Every certificate has a ``kind`` field, so a file can be loaded without
knowing its kind in advance (see ``load_certificate``).
"""

import re
from fractions import Fraction
from typing import Annotated, Dict, List, Literal, Optional, Sequence, Union

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PlainSerializer,
    PlainValidator,
    TypeAdapter,
    model_validator,
)

from pmatrixcheck.core.exact_linalg import RationalMatrix, format_rational, to_rational


def _validate_rational(value) -> Fraction:
    if isinstance(value, (Fraction, int, str)) and not isinstance(value, bool):
        return to_rational(value)
    raise ValueError(f"Expected an exact rational 'p' or 'p/q', got {value!r}")


RationalValue = Annotated[
    Fraction,
    PlainValidator(_validate_rational),
    PlainSerializer(format_rational, return_type=str),
]

Sign = Literal[-1, 1]


class CertificateModel(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class CutCertificate(CertificateModel):
    """A bipartition of the vertex set and the number of edges it cuts"""

    kind: Literal["cut"] = "cut"
    side: List[Literal[1, 2]] = Field(..., description="Side label of vertex i+1")
    cut_size: int = Field(..., ge=0, description="Edges with differently-labelled ends")

    @property
    def first_side(self) -> List[int]:
        """1-based vertices labelled 1"""
        return [i + 1 for i, label in enumerate(self.side) if label == 1]


class NormWitness(CertificateModel):
    """Sign vectors attaining a value of z^T A y"""

    kind: Literal["norm-witness"] = "norm-witness"
    y: List[Sign] = Field(..., description="Right sign vector")
    z: List[Sign] = Field(..., description="Left sign vector")
    value: RationalValue = Field(..., description="z^T A y")

    @model_validator(mode="after")
    def _same_length(self):
        if len(self.y) != len(self.z):
            raise ValueError("y and z must have the same length")
        return self


class SingularityCertificate(CertificateModel):
    """An exact singular matrix inside a matrix interval"""

    kind: Literal["singular-matrix"] = "singular-matrix"
    witness_matrix: List[List[RationalValue]] = Field(
        ..., description="Row-major entries of the singular matrix B"
    )
    y: Optional[List[RationalValue]] = Field(
        None, description="Row scalings used to build B, each in [-1, 1]"
    )
    z: Optional[List[RationalValue]] = Field(
        None, description="Column scalings used to build B, each in [-1, 1]"
    )

    @model_validator(mode="after")
    def _square(self):
        n = len(self.witness_matrix)
        if any(len(row) != n for row in self.witness_matrix):
            raise ValueError("witness_matrix must be square")
        return self

    @classmethod
    def from_matrix(
        cls,
        B: RationalMatrix,
        y: Optional[Sequence[Fraction]] = None,
        z: Optional[Sequence[Fraction]] = None,
    ) -> "SingularityCertificate":
        return cls(
            witness_matrix=B.to_rows(),
            y=list(y) if y is not None else None,
            z=list(z) if z is not None else None,
        )

    def matrix(self) -> RationalMatrix:
        n = len(self.witness_matrix)
        return RationalMatrix.from_rows(self.witness_matrix, cols=n)


_NOT_P_LINE = re.compile(r"^NOT_P\s+index_set=([\d,\s]+?)\s+minor=(\S+)\s*$")


class NonPCertificate(CertificateModel):
    """A principal minor that is not positive"""

    kind: Literal["non-p-minor"] = "non-p-minor"
    index_set: List[int] = Field(..., min_length=1, description="1-based rows/columns")
    minor_value: RationalValue = Field(..., description="The principal minor")

    def to_text(self) -> str:
        indices = ",".join(str(i) for i in self.index_set)
        return f"NOT_P index_set={indices} minor={format_rational(self.minor_value)}"

    @classmethod
    def from_text(cls, line: str) -> "NonPCertificate":
        match = _NOT_P_LINE.match(line.strip())
        if not match:
            raise ValueError(f"Not a NOT_P certificate line: {line.strip()!r}")
        indices = [int(part) for part in match.group(1).split(",") if part.strip()]
        return cls(index_set=indices, minor_value=match.group(2))


Certificate = Annotated[
    Union[CutCertificate, NormWitness, SingularityCertificate, NonPCertificate],
    Field(discriminator="kind"),
]

CERTIFICATE_KINDS = ("cut", "norm-witness", "singular-matrix", "non-p-minor")

_certificate_adapter = TypeAdapter(Certificate)
_REPORT_MARKER = re.compile(r"^\{.*\"stages\"\s*:", re.DOTALL)


def load_certificate(text: str, kind: Optional[str] = None):
    """
    Parse a certificate from JSON, from a NOT_P text line, or out of a
    pipeline report.

    A pipeline report (JSON with a "stages" list) holds one certificate per
    stage; the first one of the given kind is returned.

    Raises:
        pydantic.ValidationError: if the JSON does not match any certificate kind
        ValueError: if the text is neither JSON nor a NOT_P line, or a report
            has no certificate of the given kind
    """
    stripped = text.strip()
    if stripped.startswith("NOT_P"):
        return NonPCertificate.from_text(stripped)
    if _REPORT_MARKER.search(stripped):
        return stage_certificate(PipelineReport.model_validate_json(stripped), kind)
    return _certificate_adapter.validate_json(stripped)


def stage_certificate(report: "PipelineReport", kind: Optional[str]):
    """First stage certificate of the given kind in a pipeline report"""
    if kind is None:
        raise ValueError("a pipeline report needs the certificate kind to pick a stage")
    for stage in report.stages:
        if stage.certificate is not None and stage.certificate.kind == kind:
            return stage.certificate
    raise ValueError(f"pipeline report has no {kind!r} certificate")


def dump_certificate(certificate) -> str:
    return certificate.model_dump_json(indent=2)


class StageReport(BaseModel):
    """Outcome of one problem in the reduction chain"""

    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., description="Stage identifier, e.g. 'rnorm'")
    problem: str = Field(..., description="Decision problem asked at this stage")
    instance: str = Field(..., description="One-line instance summary")
    status: Literal["ok", "skipped"] = "ok"
    verdict: Optional[bool] = Field(None, description="Stage answer; None if skipped")
    reduction_output: Optional[str] = Field(
        None, description="Text rendering of the instance handed to the next stage"
    )
    certificate: Optional[Certificate] = None
    details: Dict[str, str] = Field(default_factory=dict)


class PipelineReport(BaseModel):
    """All four stages of the chain and whether their verdicts agree"""

    model_config = ConfigDict(extra="forbid")

    vertices: int
    edges: int
    K: int
    stages: List[StageReport]
    consistent: bool
    disagreement: Optional[str] = Field(
        None, description="First pair of stages whose verdicts differ"
    )
