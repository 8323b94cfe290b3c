from ._sylvester import (
    Instance,
    ParseError,
    Report,
    SylvesterError,
    generate,
    lcg_sequence,
    load_instance,
    parse_instance,
    render_svg,
    solve,
)

__all__ = [
    "Instance",
    "ParseError",
    "Report",
    "SylvesterError",
    "generate",
    "lcg_sequence",
    "load_instance",
    "parse_instance",
    "render_svg",
    "solve",
]
