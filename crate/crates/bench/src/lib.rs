//! Deterministic fixtures for the benchmark suite: diagrams and matrices
//! sized like the workloads the calculus meets in practice.

use nkirby_core::{ComponentId, Diagram, DimSpec, IntMatrix, Letter, Sign};

/// A diagram with `dotted` generators and `framed` components whose words
/// cycle through the generators with alternating signs, so every reducer
/// phase (slides, cancellations, framing folds) has work to do.
pub fn dense_diagram(k: u32, dotted: usize, framed: usize) -> Diagram {
    let dim = DimSpec::new(2 * k + 1, k).expect("bench dims are valid");
    let mut d = Diagram::new(dim);
    for i in 1..=dotted {
        d = d.with_dotted(&format!("x{i}")).unwrap();
    }
    for j in 1..=framed {
        let letters: Vec<Letter> = (0..6)
            .map(|t| {
                let gen = (j + t) % dotted + 1;
                let sign = if (j + t) % 3 == 0 { Sign::Minus } else { Sign::Plus };
                Letter::new(ComponentId::new(&format!("x{gen}")).unwrap(), sign)
            })
            .collect();
        d = d
            .with_framed(&format!("f{j}"), &letters, (j as i64 % 7) - 3)
            .unwrap();
    }
    d
}

/// A square matrix with mixed-sign entries and nontrivial elementary
/// divisors; the usual Smith-normal-form workload.
pub fn stiff_matrix(size: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let v = ((i as i64 + 2) * (j as i64 + 3)) % 11 - 5;
                    if (i + j) % 2 == 0 {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows)
}
