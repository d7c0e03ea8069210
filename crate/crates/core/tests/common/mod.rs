//! Shared machinery for the acceptance suite: a corpus of small finite
//! groups given both as presentations and as permutation groups, a
//! brute-force Cayley-graph order oracle, and a determinantal-divisor
//! oracle for Smith normal forms.  Everything here is computed from
//! first principles, independently of the library's own algorithms, so
//! that agreement is meaningful evidence.

use amalgam_core::presentation::{Presentation, Word};

// --- permutations --------------------------------------------------------

/// A permutation of `0..degree`, stored as its image vector.
pub type Perm = Vec<usize>;

fn identity(degree: usize) -> Perm {
    (0..degree).collect()
}

/// Builds a permutation of `0..degree` from disjoint cycles.
pub fn perm(degree: usize, cycles: &[&[usize]]) -> Perm {
    let mut images = identity(degree);
    for cycle in cycles {
        for (i, &point) in cycle.iter().enumerate() {
            images[point] = cycle[(i + 1) % cycle.len()];
        }
    }
    images
}

fn compose(first: &Perm, then: &Perm) -> Perm {
    first.iter().map(|&i| then[i]).collect()
}

fn invert(p: &Perm) -> Perm {
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j] = i;
    }
    out
}

/// Brute-force group order: breadth-first closure of the generators and
/// their inverses inside the symmetric group.
pub fn cayley_order(degree: usize, generators: &[Perm]) -> usize {
    use std::collections::{HashSet, VecDeque};
    let mut steps: Vec<Perm> = vec![];
    for g in generators {
        steps.push(g.clone());
        steps.push(invert(g));
    }
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut queue: VecDeque<Perm> = VecDeque::new();
    seen.insert(identity(degree));
    queue.push_back(identity(degree));
    while let Some(element) = queue.pop_front() {
        for step in &steps {
            let next = compose(&element, step);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen.len()
}

// --- corpus ---------------------------------------------------------------

/// One corpus entry: a presentation and a faithful permutation
/// realization of the same finite group, with its known order.
pub struct CorpusGroup {
    pub name: &'static str,
    pub presentation: Presentation,
    pub order: usize,
    pub degree: usize,
    pub perm_generators: Vec<Perm>,
}

pub fn word(text: &str) -> Word {
    Word::parse(text).expect("corpus words are well-formed")
}

fn presentation(generators: &[&str], relators: &[&str]) -> Presentation {
    Presentation::new(
        generators.iter().map(|g| g.to_string()).collect(),
        relators.iter().map(|r| word(r)).collect(),
    )
    .expect("corpus presentations are well-formed")
}

/// Six finite groups of orders 6, 12, 24, 60, 120 and 168: the (2,3,k)
/// triangle quotients for k = 2..5, the rank-four symmetric-group
/// Coxeter presentation, and the order-168 simple group acting on the
/// eight-point projective line.
pub fn corpus() -> Vec<CorpusGroup> {
    vec![
        CorpusGroup {
            name: "triangle quotient (2,3,2), symmetric on 3 points",
            presentation: presentation(&["a", "b"], &["a^2", "b^3", "a b a b"]),
            order: 6,
            degree: 3,
            perm_generators: vec![perm(3, &[&[0, 1]]), perm(3, &[&[0, 1, 2]])],
        },
        CorpusGroup {
            name: "triangle quotient (2,3,3), alternating on 4 points",
            presentation: presentation(&["a", "b"], &["a^2", "b^3", "a b a b a b"]),
            order: 12,
            degree: 4,
            perm_generators: vec![perm(4, &[&[0, 1], &[2, 3]]), perm(4, &[&[0, 1, 2]])],
        },
        CorpusGroup {
            name: "triangle quotient (2,3,4), symmetric on 4 points",
            presentation: presentation(&["a", "b"], &["a^2", "b^3", "a b a b a b a b"]),
            order: 24,
            degree: 4,
            perm_generators: vec![perm(4, &[&[0, 1]]), perm(4, &[&[1, 2, 3]])],
        },
        CorpusGroup {
            name: "triangle quotient (2,3,5), alternating on 5 points",
            presentation: presentation(&["a", "b"], &["a^2", "b^3", "a b a b a b a b a b"]),
            order: 60,
            degree: 5,
            perm_generators: vec![perm(5, &[&[0, 1], &[2, 3]]), perm(5, &[&[0, 2, 4]])],
        },
        CorpusGroup {
            name: "rank-four Coxeter presentation, symmetric on 5 points",
            presentation: presentation(
                &["s1", "s2", "s3", "s4"],
                &[
                    "s1^2",
                    "s2^2",
                    "s3^2",
                    "s4^2",
                    "s1 s2 s1 s2 s1 s2",
                    "s2 s3 s2 s3 s2 s3",
                    "s3 s4 s3 s4 s3 s4",
                    "s1 s3 s1 s3",
                    "s1 s4 s1 s4",
                    "s2 s4 s2 s4",
                ],
            ),
            order: 120,
            degree: 5,
            perm_generators: vec![
                perm(5, &[&[0, 1]]),
                perm(5, &[&[1, 2]]),
                perm(5, &[&[2, 3]]),
                perm(5, &[&[3, 4]]),
            ],
        },
        CorpusGroup {
            name: "order-168 simple group on the projective line",
            presentation: presentation(
                &["a", "b"],
                &[
                    "a^2",
                    "b^3",
                    "a b a b a b a b a b a b a b",
                    "a^-1 b^-1 a b a^-1 b^-1 a b a^-1 b^-1 a b a^-1 b^-1 a b",
                ],
            ),
            order: 168,
            degree: 8,
            // x -> -1/x and x -> x + 1 on {0, .., 6, infinity = 7}.
            perm_generators: vec![
                perm(8, &[&[0, 7], &[1, 6], &[2, 3], &[4, 5]]),
                perm(8, &[&[0, 1, 2, 3, 4, 5, 6]]),
            ],
        },
    ]
}

// --- Smith normal form oracle ----------------------------------------------

/// Fraction-free (Bareiss) determinant of a square matrix.
fn determinant(mat: &[Vec<i128>]) -> i128 {
    let n = mat.len();
    if n == 0 {
        return 1;
    }
    let mut m = mat.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// All k-element subsets of `0..n`, in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Invariant factors by determinantal divisors: `d_k` is the gcd of all
/// `k x k` minors and the k-th invariant factor is `d_k / d_(k-1)`; once
/// some `d_k` vanishes every later factor is zero.  Square input only.
pub fn minor_gcd_invariant_factors(mat: &[Vec<i64>]) -> Vec<i128> {
    let n = mat.len();
    let wide: Vec<Vec<i128>> = mat
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let mut factors: Vec<i128> = vec![];
    let mut previous = 1i128;
    for k in 1..=n {
        let index_sets = subsets(n, k);
        let mut divisor = 0i128;
        'level: for rows in &index_sets {
            for cols in &index_sets {
                let minor: Vec<Vec<i128>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| wide[i][j]).collect())
                    .collect();
                divisor = gcd(divisor, determinant(&minor));
                if divisor == 1 {
                    break 'level;
                }
            }
        }
        if divisor == 0 {
            factors.resize(n, 0);
            break;
        }
        factors.push(divisor / previous);
        previous = divisor;
    }
    factors
}
