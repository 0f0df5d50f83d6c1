//! Small named states with known uniformity, used as ground truth.

use crate::exact::{rat, GaussRat};
use crate::hetero::DimensionProfile;

use super::PureState;

#[derive(Clone, Debug)]
pub struct CorpusState {
    pub name: String,
    pub state: PureState,
    /// Largest `k` for which the state is `k`-uniform (0 if none).
    pub uniformity: usize,
}

fn entry(name: impl Into<String>, state: PureState, uniformity: usize) -> CorpusState {
    CorpusState {
        name: name.into(),
        state,
        uniformity,
    }
}

pub fn ghz(n: usize, d: u32) -> PureState {
    let amps: Vec<(Vec<u32>, GaussRat)> = (0..d)
        .map(|i| (vec![i; n], GaussRat::real(rat(1, 1))))
        .collect();
    PureState::new(DimensionProfile::homogeneous(n, d).unwrap(), amps).unwrap()
}

/// Graph state of the `n`-cycle.
pub fn ring_graph_state(n: usize) -> PureState {
    let amps = (0..1u32 << n)
        .map(|x| {
            let bits: Vec<u32> = (0..n).map(|i| x >> i & 1).collect();
            let edges: u32 = (0..n).map(|i| bits[i] & bits[(i + 1) % n]).sum();
            let sign = if edges.is_multiple_of(2) { 1 } else { -1 };
            (bits, GaussRat::real(rat(sign, 1)))
        })
        .collect();
    PureState::new(DimensionProfile::homogeneous(n, 2).unwrap(), amps).unwrap()
}

/// `Σ_{i,j} |i, j, i+j, i+2j⟩` over `Z_3`.
pub fn ame_4_3() -> PureState {
    let mut amps = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            amps.push((
                vec![i, j, (i + j) % 3, (i + 2 * j) % 3],
                GaussRat::real(rat(1, 1)),
            ));
        }
    }
    PureState::new(DimensionProfile::homogeneous(4, 3).unwrap(), amps).unwrap()
}

pub fn corpus() -> Vec<CorpusState> {
    let mut out = vec![
        entry(
            "bell",
            PureState::from_real(vec![2, 2], &[(&[0, 0], 1), (&[1, 1], 1)]).unwrap(),
            1,
        ),
        entry(
            "bell-phase",
            PureState::new(
                DimensionProfile::homogeneous(2, 2).unwrap(),
                vec![
                    (vec![0, 1], GaussRat::real(rat(1, 1))),
                    (vec![1, 0], GaussRat::new(rat(0, 1), rat(1, 1))),
                ],
            )
            .unwrap(),
            1,
        ),
    ];
    for d in [2, 3] {
        for n in 2..=6 {
            out.push(entry(format!("ghz-{n}-{d}"), ghz(n, d), 1));
        }
    }
    out.extend([
        entry(
            "product-00",
            PureState::from_real(vec![2, 2], &[(&[0, 0], 1)]).unwrap(),
            0,
        ),
        entry(
            "product-plus-plus",
            PureState::from_real(
                vec![2, 2],
                &[(&[0, 0], 1), (&[0, 1], 1), (&[1, 0], 1), (&[1, 1], 1)],
            )
            .unwrap(),
            0,
        ),
        entry(
            "product-012",
            PureState::from_real(vec![3, 3, 3], &[(&[0, 1, 2], 1)]).unwrap(),
            0,
        ),
        entry(
            "w3",
            PureState::from_real(
                vec![2, 2, 2],
                &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)],
            )
            .unwrap(),
            0,
        ),
        entry("ring-5", ring_graph_state(5), 2),
        entry("ame-4-3", ame_4_3(), 2),
        entry(
            "skewed-pair",
            PureState::from_real(vec![2, 2], &[(&[0, 0], 2), (&[1, 1], 1)]).unwrap(),
            0,
        ),
    ]);
    out
}
