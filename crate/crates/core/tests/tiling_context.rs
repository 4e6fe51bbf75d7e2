//! Small clusters: compares "tiles ℤ_n for some n ≤ 12" with the decider.
//! Disagreements are printed, not failed; bounded searches on both sides
//! can miss tilings or spectra outside their range.

use itertools::Itertools;

use specrat::flags::{decide_spectrality, SpectralityStatus, ThresholdMode};
use specrat::oracle::tiling_complements_mod;
use specrat::Cluster;

#[test]
fn tiling_versus_spectrality_on_small_clusters() {
    let mut compared = 0;
    let mut disagreements = Vec::new();
    for d in 2..=4usize {
        for tail in (1..=6i64).combinations(d - 1) {
            let c = Cluster::new(&[vec![0], tail].concat()).unwrap();
            let tiles = (d as u64..=12)
                .step_by(d)
                .any(|n| !tiling_complements_mod(&c, n).unwrap().is_empty());
            let v = decide_spectrality(&c, Some(12), ThresholdMode::AsStated).unwrap();
            if v.status == SpectralityStatus::Unknown {
                continue;
            }
            compared += 1;
            let spectral = v.status == SpectralityStatus::Spectral;
            if tiles != spectral {
                disagreements.push(format!("{:?}: tiles={tiles} spectral={spectral}", c.elements()));
            }
        }
    }
    println!("compared {compared} clusters, {} disagreements", disagreements.len());
    for line in &disagreements {
        println!("  {line}");
    }
    assert!(compared > 0);
}
