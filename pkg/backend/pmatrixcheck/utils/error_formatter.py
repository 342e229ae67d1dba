"""
Error formatting for certificate files.

Turns pydantic validation errors into short reasons that ``verify`` can
print after ``INVALID:``.
"""

import re
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

_KIND_TAGS = {"cut", "norm-witness", "singular-matrix", "non-p-minor"}


def humanize_field_name(field_name: str) -> str:
    """
    snake_case to lower-case words.

    Examples:
        cut_size → cut size
        witness_matrix → witness matrix
        index_set → index set
    """
    return field_name.replace("_", " ")


def extract_position(location: List[Any]) -> Optional[str]:
    """
    1-based position of the offending entry, e.g. "entry 3" or "entry (2, 1)".

    Examples:
        ['side', 2] → "entry 3"
        ['witness_matrix', 1, 0] → "entry (2, 1)"
        ['value'] → None
    """
    indices = [part + 1 for part in location if isinstance(part, int)]
    if not indices:
        return None
    if len(indices) == 1:
        return f"entry {indices[0]}"
    return "entry (" + ", ".join(str(i) for i in indices) + ")"


def simplify_error_message(error_type: str, error_msg: str, input_value: Any) -> str:
    """
    Convert a pydantic error into a short certificate-level message.

    Args:
        error_type: pydantic error type (e.g. 'int_type', 'literal_error')
        error_msg: original error message
        input_value: the rejected input

    Returns:
        Simplified message
    """
    if error_type in ("int_type", "int_parsing", "int_from_float"):
        return f"expected an integer, got {input_value!r}"

    if error_type == "list_type":
        return f"expected a list, got {type(input_value).__name__}"

    if error_type == "missing":
        return "required field is missing"

    if error_type == "extra_forbidden":
        return "unexpected field"

    if error_type == "literal_error":
        allowed = re.search(r"Input should be (.*)$", error_msg)
        if allowed:
            return f"got {input_value!r}, expected {allowed.group(1)}"
        return f"value {input_value!r} is not allowed"

    if error_type == "union_tag_invalid":
        return "unknown certificate kind; expected one of cut, norm-witness, singular-matrix, non-p-minor"

    if error_type == "union_tag_not_found":
        return "missing 'kind' field"

    if error_type == "greater_than_equal":
        return f"{input_value!r} is negative"

    if error_type == "too_short":
        return "must not be empty"

    if error_type == "json_invalid":
        return "not valid JSON"

    if error_type == "value_error":
        # pydantic prefixes raised ValueErrors with "Value error, "
        return error_msg.removeprefix("Value error, ")

    return error_msg


def format_single_validation_error(error: Dict[str, Any]) -> Dict[str, Any]:
    """
    Format one pydantic error dict ('loc', 'msg', 'type', 'input').

    Returns:
        Dict with 'field', 'position', 'message'
    """
    location = list(error.get("loc", []))
    error_type = error.get("type", "")

    field_name = None
    for part in reversed(location):
        # Discriminated unions put the kind tag into the location
        if isinstance(part, str) and part not in _KIND_TAGS:
            field_name = part
            break

    return {
        "field": humanize_field_name(field_name) if field_name else "certificate",
        "position": extract_position(location),
        "message": simplify_error_message(
            error_type, error.get("msg", ""), error.get("input")
        ),
    }


def format_validation_errors(
    errors: List[Dict[str, Any]], max_errors: int = 3
) -> List[str]:
    """One line per error, truncated after max_errors"""
    lines = []
    for error in errors[:max_errors]:
        formatted = format_single_validation_error(error)
        where = formatted["field"]
        if formatted["position"]:
            where = f"{where} {formatted['position']}"
        lines.append(f"{where}: {formatted['message']}")
    if len(errors) > max_errors:
        lines.append(f"and {len(errors) - max_errors} more")
    return lines


def create_certificate_error_message(error: ValidationError) -> str:
    """A single-line reason for a certificate that failed validation"""
    return "malformed certificate: " + "; ".join(format_validation_errors(error.errors()))
