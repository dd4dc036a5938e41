"""Example usage of polygauge library."""

import asyncio

from polygauge import (
    MIN_MC_SAMPLES,
    ChordLaw,
    DistanceLaw,
    PolygaugeException,
    PolygaugeInvalidParameterError,
    async_run_suite,
    mean_chord,
    mean_distance,
    new_polygon,
)
from polygauge.montecarlo import async_collect, ks_distance, sample_pair_distances

SIDES = 5
RADIUS = 1.0


def _print_laws(dlaw: DistanceLaw) -> None:
    """Print a few values of F, g and G."""
    poly = dlaw.poly
    print(f"  Polygon:             {poly!r}")
    print(f"  Perimeter:           {poly.u:.6f}")
    print(f"  Area:                {poly.A:.6f}")
    print(f"  Longest chord:       {poly.max_chord:.6f}")
    print(f"  Breakpoints:         {', '.join(f'{p:.4f}' for p in poly.breakpoints)}")
    print(f"  Mean chord:          {mean_chord(poly):.10f}")
    print(f"  Mean distance:       {mean_distance(dlaw):.10f}")

    print("\n       x          F(x)          g(x)          G(x)")
    for i in range(9):
        x = poly.max_chord * i / 8
        print(
            f"  {x:8.4f}  {dlaw.chord.cdf(x):12.8f}  "
            f"{dlaw.pdf(x):12.8f}  {dlaw.cdf(x):12.8f}"
        )


async def main() -> None:
    """Example main function demonstrating the polygauge laws."""
    print(f"Building the laws of the regular {SIDES}-gon...")
    dlaw = DistanceLaw(ChordLaw(new_polygon(SIDES, RADIUS)))
    _print_laws(dlaw)

    # Compare the closed form with sampled pair distances
    samples = 4 * MIN_MC_SAMPLES
    print(f"\nSampling {samples} point pairs...")
    emp = await async_collect(dlaw.poly, sample_pair_distances, samples, seed=7)
    print(f"  KS distance to G:    {ks_distance(emp, dlaw.cdf_array):.5f}")

    # Invalid polygons are rejected at construction
    try:
        new_polygon(2)
    except PolygaugeInvalidParameterError as err:
        print(f"\nRejected: {err}")


async def run_suite() -> None:
    """Example running the analytic oracle suite for several polygons."""
    print("\n" + "=" * 50)
    print("ORACLE SUITE")
    print("=" * 50)

    try:
        results = await async_run_suite(range(3, 7), samples=0)
    except PolygaugeException as err:
        print(f"Error: {err}")
        return
    for result in results:
        status = "SKIP" if result.skipped else "PASS" if result.passed else "FAIL"
        print(f"  {status} n={result.n} {result.name}: {result.detail}")


if __name__ == "__main__":
    print("POLYGAUGE LIBRARY EXAMPLE")
    print("=" * 50)

    asyncio.run(main())
    asyncio.run(run_suite())

    print("\nExample completed!")
