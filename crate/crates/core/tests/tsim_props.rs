use proptest::prelude::*;

use stabrank::chform::{apply_gate_dense, CliffordGate};
use stabrank::exactnum::{Cyclotomic8, RealQuadratic};
use stabrank::f2alg::BitVector;
use stabrank::tsim::{amplitude, gadgetize, outcome_probability, parse_circuit, simulate_dense_circuit, t_state, Circuit, Gate, Method};

fn gate(k: usize) -> impl Strategy<Value = Gate> {
    (0..7u8, 0..k, 0..k.max(2) - 1).prop_map(move |(g, a, b)| {
        let b = if b >= a { b + 1 } else { b };
        match g {
            0 => Gate::Clifford(CliffordGate::H(a)),
            1 => Gate::Clifford(CliffordGate::S(a)),
            2 => Gate::Clifford(CliffordGate::X(a)),
            3 => Gate::Clifford(CliffordGate::Z(a)),
            4 if k > 1 => Gate::Clifford(CliffordGate::Cz(a, b)),
            5 if k > 1 => Gate::Clifford(CliffordGate::Cnot(a, b)),
            6 => Gate::T(a),
            _ => Gate::Clifford(CliffordGate::H(a)),
        }
    })
}

/// Random circuits on ≤ 4 qubits with T-count ≤ 4.
fn circuit() -> impl Strategy<Value = Circuit> {
    (1usize..=4).prop_flat_map(|k| (Just(k), prop::collection::vec(gate(k), 0..=25))).prop_map(|(k, gates)| {
        // Excess T gates become S gates.
        let mut t = 0;
        let gates = gates
            .into_iter()
            .map(|g| match g {
                Gate::T(q) if t >= 4 => Gate::Clifford(CliffordGate::S(q)),
                Gate::T(q) => {
                    t += 1;
                    Gate::T(q)
                }
                other => other,
            })
            .collect();
        Circuit { k, gates }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn decomposition_matches_dense(c in circuit()) {
        let dense = simulate_dense_circuit(&c).unwrap();
        let mut total = RealQuadratic::zero();
        for x in 0..1u32 << c.k {
            let x = BitVector::new(c.k, x).unwrap();
            let a = amplitude(&c, &x, Method::Decomposition).unwrap();
            prop_assert_eq!(&a, &dense[x.bits() as usize]);
            total = &total + &outcome_probability(&c, &x, Method::Decomposition).unwrap();
        }
        prop_assert_eq!(total, RealQuadratic::from_ints(1, 0));
    }

    /// ⟨x|V|0ᵏ⟩ = ⟨x, 0ⁿ| U |0ᵏ ⊗ (e₀ + ζe₁)^{⊗n}⟩, checked densely.
    #[test]
    fn gadget_identity(c in circuit()) {
        let g = gadgetize(&c);
        prop_assert_eq!(g.n, c.t_count());
        prop_assert_eq!(g.gates.len(), c.gates.len());
        let total = g.k + g.n;
        let t = t_state(g.n);
        let mut state = vec![Cyclotomic8::zero(); 1 << total];
        // e_0 on the first k qubits (most significant bits), T-states after.
        state[..t.len()].clone_from_slice(&t);
        for cg in &g.gates {
            apply_gate_dense(&mut state, total, cg);
        }
        let dense = simulate_dense_circuit(&c).unwrap();
        for x in 0..1usize << c.k {
            prop_assert_eq!(&state[x << g.n], &dense[x]);
        }
    }

    #[test]
    fn circuit_text_round_trips(c in circuit()) {
        prop_assert_eq!(parse_circuit(&c.to_string()).unwrap(), c);
    }
}
