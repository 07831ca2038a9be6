"""
Small formatting helpers shared by the templates
"""


def format_count(value: int) -> str:
    """Thousands separated integer"""
    return f"{value:,}"


def format_bytes(value: int) -> str:
    """Human readable byte count"""
    size = float(value)
    for unit in ("B", "KiB", "MiB", "GiB"):
        if size < 1024 or unit == "GiB":
            return f"{size:.0f} {unit}" if unit == "B" else f"{size:.1f} {unit}"
        size /= 1024
    return f"{size:.1f} GiB"  # pragma: no cover


def truncate_text(text: str, max_length: int, suffix: str = "...") -> str:
    """
    Truncate text with suffix if longer than max_length
    """
    if not text or len(text) <= max_length:
        return text

    return text[:max_length - len(suffix)] + suffix

