//! Searches random diagrams for case (ii′) types at a small bound and prints
//! which obstruction conditions each positive diagram satisfies.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twinbuild::bounded::{case_ii_search, enumerate_types, Case};
use twinbuild::coxeter::{CoxeterGroup, CoxeterMatrix};
use twinbuild::diagram::{check_condition, Condition};
use twinbuild::Exec;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let bonds: Vec<u32> = args.get(1).map_or(vec![2, 3, 4, 6, 0], |s| s.split(',').map(|x| x.parse().unwrap()).collect());
    let count: usize = args.get(2).map_or(300, |s| s.parse().unwrap());
    let bound: usize = args.get(3).map_or(3, |s| s.parse().unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut hits = 0;
    for _ in 0..count {
        let rank = rng.gen_range(3..=4);
        let mut rows = vec![vec![1u32; rank]; rank];
        for i in 0..rank {
            for j in i + 1..rank {
                let m = bonds[rng.gen_range(0..bonds.len())];
                rows[i][j] = m;
                rows[j][i] = m;
            }
        }
        let cm = CoxeterMatrix::new(rows).unwrap();
        let g = CoxeterGroup::new(cm.clone());
        if g.is_finite() {
            continue;
        }
        let n = case_ii_search(&g, bound, Exec::default()).unwrap();
        if n > 0 {
            hits += 1;
            let conds: Vec<String> = [Condition::R1, Condition::R2, Condition::R3]
                .iter()
                .map(|&c| format!("{c}={}", check_condition(&cm, c).unwrap()))
                .collect();
            println!("{cm}  case(ii)={n}  {}", conds.join(" "));
            if hits <= 2 {
                for v in enumerate_types(&g, bound, Exec::default()).unwrap().verdicts.iter().filter(|v| v.case == Case::Parallel) {
                    let e = v.envelopes.as_ref().unwrap();
                    println!("    {} | {}   envelopes {} | {}", v.refined.0, v.refined.1, e.0, e.1);
                }
            }
        }
    }
    println!("{hits} diagrams with case (ii')");
}
