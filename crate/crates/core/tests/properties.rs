use circulant8::cli::route_word;
use circulant8::lattice::lies_between;
use circulant8::quotient::project_with;
use circulant8::reduction::{excess, stage1_reduce, word_from_certificate};
use circulant8::{build_system, generator_set, l1_distance, reduce, Vec4};
use proptest::prelude::*;

fn vec4(r: i64) -> impl Strategy<Value = Vec4> {
    [-r..=r, -r..=r, -r..=r, -r..=r].prop_map(Vec4)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn between_points_are_additive(x in vec4(50), z in vec4(50), pick in any::<[u16; 4]>()) {
        let y = Vec4(std::array::from_fn(|i| {
            let (lo, hi) = (x.0[i].min(z.0[i]), x.0[i].max(z.0[i]));
            lo + i64::from(pick[i]) % (hi - lo + 1)
        }));
        prop_assert!(lies_between(x, y, z));
        prop_assert_eq!(l1_distance(x, y) + l1_distance(y, z), l1_distance(x, z));
    }

    // In l1 the converse holds too.
    #[test]
    fn additive_points_are_between(x in vec4(6), y in vec4(6), z in vec4(6)) {
        let additive = l1_distance(x, y) + l1_distance(y, z) == l1_distance(x, z);
        prop_assert_eq!(additive, lies_between(x, y, z));
    }

    #[test]
    fn project_is_a_homomorphism(k in 2i64..=60, x in vec4(1 << 40), y in vec4(1 << 40)) {
        let gens = generator_set(k).unwrap();
        prop_assert_eq!(project_with(x + y, &gens), (project_with(x, &gens) + project_with(y, &gens)) % gens.n);
        prop_assert_eq!((project_with(x, &gens) + project_with(-x, &gens)) % gens.n, 0);
    }

    #[test]
    fn lattice_combinations_project_to_zero(k in 2i64..=50, c in vec4(1000)) {
        let sys = build_system(k).unwrap();
        let gens = generator_set(k).unwrap();
        let w: Vec4 = (0..4).map(|i| c.0[i] * sys.v(i + 1)).sum::<Vec4>() + c.0[0] * sys.v(5 + (c.0[1].rem_euclid(4) as usize));
        prop_assert_eq!(project_with(w, &gens), 0);
    }

    #[test]
    fn stage1_excess_strictly_drops(k in 4i64..=16, x in vec4(500)) {
        let sys = build_system(k).unwrap();
        let (end, moves) = stage1_reduce(x, &sys).unwrap();
        let mut cur = x;
        for m in &moves {
            let next = cur + sys.step(*m);
            prop_assert!(excess(next, &sys) < excess(cur, &sys));
            cur = next;
        }
        prop_assert_eq!(cur, end);
        prop_assert!(end.max_abs() <= sys.box_bound());
    }

    #[test]
    fn word_length_is_centrosymmetric(k in 4i64..=16, x in vec4(80)) {
        let sys = build_system(k).unwrap();
        let (p, m) = (reduce(x, &sys).unwrap(), reduce(-x, &sys).unwrap());
        prop_assert_eq!(p.word_length, m.word_length);
    }

    #[test]
    fn certificates_are_sound(k in 4i64..=20, x in vec4(200)) {
        let sys = build_system(k).unwrap();
        let gens = generator_set(k).unwrap();
        let cert = reduce(x, &sys).unwrap();
        prop_assert!(cert.check(&sys).is_ok());
        prop_assert!(cert.word_length <= k);
        prop_assert_eq!(cert.word_length, cert.residual.l1_norm());
        let w = cert.lattice_point(&sys);
        prop_assert_eq!(x - w, cert.residual);
        prop_assert_eq!(project_with(w, &gens), 0);
        let word = word_from_certificate(&cert, &gens).unwrap();
        prop_assert_eq!(word.replay(&gens), project_with(x, &gens));
    }

    #[test]
    fn routes_replay(k in 2i64..=14, frac in 0.0f64..1.0) {
        let n = generator_set(k).unwrap().n;
        let g = ((frac * n as f64) as i64).min(n - 1);
        let word = route_word(k, g).unwrap();
        prop_assert!(word.len() <= k);
        prop_assert_eq!(word.replay(&generator_set(k).unwrap()), g);
    }
}
