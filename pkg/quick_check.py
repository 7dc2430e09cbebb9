#!/usr/bin/env python3
"""
Quick check script to verify the correlation equality tests on the embedded blood-flow data.
"""
import sys
import os

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.corr_equality import datasets
from src.corr_equality.rngdist import RngStream
from src.corr_equality.significance_tests import BootstrapSettings, fisher_z_test, gv_test, mslr_test


def check_real_data(boot_m: int = 10000, draws: int = 10000, seed: int = 20150101):
    """Run every method on the three regions and compare with the published p-values."""
    print("=" * 70)
    print("Correlation equality: men vs women, blood-flow laterality")
    print("=" * 70)

    boot = BootstrapSettings(m=boot_m, master_seed=seed)
    gv_stream = RngStream(seed, 1)

    print(f"\n{'region':<12} {'method':<9} {'p-value':>9} {'published':>10}")
    for comparison in datasets.BLOOD_FLOW_LATERALITY:
        g1, g2 = comparison.summaries()
        outcomes = [mslr_test(g1, g2, boot), gv_test(g1, g2, draws, gv_stream), fisher_z_test(g1, g2)]
        for outcome in outcomes:
            name = outcome.method.value
            published = datasets.BLOOD_FLOW_P_VALUES[name][comparison.region]
            print(f"{comparison.region:<12} {name:<9} {outcome.p_value:>9.4f} {published:>10.4f}")

    print("\n" + "=" * 70)
    print("Check complete!")
    print("=" * 70)


if __name__ == '__main__':
    check_real_data()
