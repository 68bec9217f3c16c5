"""Evaluation task layouts."""

TARGET_COUNT = 7
RADIAL_STEP_MM = 100.0
LATERAL_OFFSET_MM = 150.0


def flick_targets() -> list[tuple[float, float]]:
    """Target disc centres ``(radial, lateral)`` in mm from the launch point.

    Target i (1-based) sits 100*i mm down the board, alternating +150 mm
    (odd i) and -150 mm (even i) across it.
    """
    return [(RADIAL_STEP_MM * i, LATERAL_OFFSET_MM if i % 2 else -LATERAL_OFFSET_MM)
            for i in range(1, TARGET_COUNT + 1)]
