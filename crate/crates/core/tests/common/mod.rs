use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use discriminantal::{Arrangement, Scalar};

/// Seeded generic arrangement with small integer normals.
pub fn random_generic(seed: u64, n: usize, k: usize) -> Arrangement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let normals: Vec<Vec<Scalar>> = (0..n)
            .map(|_| {
                (0..k)
                    .map(|_| Scalar::from_int(rng.gen_range(-50..=50)))
                    .collect()
            })
            .collect();
        if normals.iter().any(|v| v.iter().all(Scalar::is_zero)) {
            continue;
        }
        let a = Arrangement::new(k, normals, None).expect("well-formed");
        if a.is_generic() {
            return a;
        }
    }
}
