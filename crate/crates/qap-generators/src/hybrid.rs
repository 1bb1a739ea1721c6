//! Combining distance and flow matrices from different generators.
//!
//! Because the distance-side and flow-side generators in this crate are
//! independent, any distance matrix can be paired with any equally
//! sized flow matrix to form a new instance family. The combinator
//! records where each side came from, both in the label and in the
//! instance metadata, so downstream tables can attribute the parts.

use ndarray::Array2;

use qap_core::Instance;

use crate::error::GenError;

/// Builds an instance from independently generated matrices.
///
/// The label becomes `"{distance_source}+{flow_source}"` and the
/// metadata keys `distance_generator` / `flow_generator` record the two
/// sources individually.
pub fn combine_hybrid(
    distance: &Array2<f64>,
    distance_source: &str,
    flow: &Array2<f64>,
    flow_source: &str,
) -> Result<Instance, GenError> {
    if distance.nrows() != flow.nrows() || distance.ncols() != flow.ncols() {
        return Err(GenError::SizeMismatch {
            distance_n: distance.nrows(),
            flow_n: flow.nrows(),
        });
    }
    let instance = Instance::new(
        format!("{distance_source}+{flow_source}"),
        distance.clone(),
        flow.clone(),
    )?;
    Ok(instance
        .with_metadata("distance_generator", distance_source)
        .with_metadata("flow_generator", flow_source))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sf::{gen_sf_distance, SfDistanceKind};
    use crate::terminal::gen_terminal;
    use crate::uniform::gen_uniform_random;

    #[test]
    fn equal_sizes_combine_with_provenance() {
        let distance =
            gen_sf_distance(&SfDistanceKind::ManhattanGrid { width: 9 }, 81, 1).unwrap();
        let flows = gen_terminal(&[3, 3, 3, 3], 20, 20, 2).unwrap();
        let hybrid = combine_hybrid(&distance, "manhattan", flows.b(), "terminal").unwrap();
        assert_eq!(hybrid.n(), 81);
        assert_eq!(hybrid.label(), "manhattan+terminal");
        assert_eq!(hybrid.metadata()["distance_generator"], "manhattan");
        assert_eq!(hybrid.metadata()["flow_generator"], "terminal");
        assert_eq!(hybrid.a(), &distance);
        assert_eq!(hybrid.b(), flows.b());
    }

    #[test]
    fn size_mismatch_names_both_dimensions() {
        let d80 = gen_sf_distance(&SfDistanceKind::ManhattanGrid { width: 10 }, 80, 1).unwrap();
        let f81 = gen_uniform_random(81, 99, false, 3).unwrap();
        match combine_hybrid(&d80, "manhattan", f81.b(), "uniform") {
            Err(GenError::SizeMismatch { distance_n, flow_n }) => {
                assert_eq!((distance_n, flow_n), (80, 81));
            }
            other => panic!("expected size mismatch, got {other:?}"),
        }
    }
}
