use rand::Rng;

use super::poly::NCPoly;
use super::scalar::ScalarPoly;
use super::word::Word;
use super::NcError;
use crate::par::{self, Exec};

/// Rewrite rule `leading -> replacement`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub leading: Word,
    pub replacement: NCPoly,
}

/// Rewriting system for the defining relations with generators ordered
/// `x1 < ... < xd` under deglex.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionSystem {
    d: u8,
    rules: Vec<Rule>,
}

/// Relation polynomial `sum_j [[x_i, x_j], x_j] - mu_i x_i` (zero in the
/// algebra).
pub fn relation(d: u8, i: u8) -> NCPoly {
    let xi = NCPoly::x(i);
    let mut r = NCPoly::zero();
    for j in 1..=d {
        r = &r + &NCPoly::double_commutator(&xi, &NCPoly::x(j));
    }
    &r - &xi.scale(&ScalarPoly::mu(i))
}

/// `sum_j [[a, x_j], x_j]` over `j` in `range`.
fn laplacian_part(a: &NCPoly, range: impl Iterator<Item = u8>) -> NCPoly {
    range.fold(NCPoly::zero(), |acc, j| &acc + &NCPoly::double_commutator(a, &NCPoly::x(j)))
}

/// The `d` rules: `x_d x_d x_i` for `i < d`, and `x_d x_{d-1} x_{d-1}`.
pub fn build_reduction_system(d: u8) -> Result<ReductionSystem, NcError> {
    if d < 2 {
        return Err(NcError::DimensionTooSmall { d });
    }
    let xd = NCPoly::x(d);
    let mut rules = Vec::with_capacity(d as usize);
    for i in 1..d {
        let xi = NCPoly::x(i);
        let two = ScalarPoly::int(2);
        let f = &(&(&(&(&xd * &xi) * &xd).scale(&two) - &(&(&xi * &xd) * &xd)) + &xi.scale(&ScalarPoly::mu(i)))
            - &laplacian_part(&xi, 1..d);
        rules.push(Rule { leading: Word::new(vec![d, d, i]), replacement: f });
    }
    let xp = NCPoly::x(d - 1);
    let two = ScalarPoly::int(2);
    let f = &(&(&(&(&xp * &xd) * &xp).scale(&two) - &(&(&xp * &xp) * &xd)) + &xd.scale(&ScalarPoly::mu(d)))
        - &laplacian_part(&xd, 1..d - 1);
    rules.push(Rule { leading: Word::new(vec![d, d - 1, d - 1]), replacement: f });
    ReductionSystem::from_rules(d, rules)
}

/// Outcome of a deterministic reduction.
#[derive(Debug, Clone)]
pub struct Reduced {
    pub normal_form: NCPoly,
    pub steps: usize,
}

impl ReductionSystem {
    /// Validates compatibility: every word of each replacement precedes the
    /// leading word.
    pub fn from_rules(d: u8, rules: Vec<Rule>) -> Result<Self, NcError> {
        for (k, r) in rules.iter().enumerate() {
            if r.leading.is_empty() {
                return Err(NcError::IncompatibleRule { rule: k });
            }
            if r.leading.max_letter() > d || r.replacement.max_letter() > d {
                return Err(NcError::IndexOutOfRange { index: r.leading.max_letter().max(r.replacement.max_letter()), d });
            }
            if r.replacement.words().any(|w| w >= &r.leading) {
                return Err(NcError::IncompatibleRule { rule: k });
            }
        }
        Ok(ReductionSystem { d, rules })
    }

    pub fn d(&self) -> u8 {
        self.d
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.leftmost_match(w).is_none()
    }

    /// Leftmost occurrence of any leading word: (position, rule index).
    fn leftmost_match(&self, w: &Word) -> Option<(usize, usize)> {
        self.rules.iter().enumerate().filter_map(|(k, r)| w.find(&r.leading).map(|p| (p, k))).min()
    }

    fn all_matches(&self, w: &Word) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (k, r) in self.rules.iter().enumerate() {
            for p in w.occurrences(&r.leading) {
                out.push((p, k));
            }
        }
        out
    }

    /// Replaces the occurrence of rule `k` at `pos` in `w` (coefficient `c`).
    fn rewrite(&self, w: &Word, pos: usize, k: usize, c: &ScalarPoly) -> NCPoly {
        let rule = &self.rules[k];
        let (left, right) = w.split_around(pos, rule.leading.len());
        rule.replacement.sandwich(&left, &right).scale(c)
    }

    fn check_letters(&self, p: &NCPoly) -> Result<(), NcError> {
        let m = p.max_letter();
        if m > self.d {
            return Err(NcError::IndexOutOfRange { index: m, d: self.d });
        }
        Ok(())
    }

    /// Normal form: repeatedly rewrites the leftmost reducible occurrence in
    /// the deglex-largest reducible word.
    pub fn reduce(&self, p: &NCPoly) -> Result<NCPoly, NcError> {
        Ok(self.reduce_counted(p)?.normal_form)
    }

    /// As [`Self::reduce`], also reporting the number of rewrites. Every
    /// rewrite consumes the current largest pending word and only produces
    /// smaller ones, so no word is rewritten twice.
    pub fn reduce_counted(&self, p: &NCPoly) -> Result<Reduced, NcError> {
        self.check_letters(p)?;
        let mut pending = p.clone();
        let mut done = NCPoly::zero();
        let mut steps = 0;
        while let Some((w, c)) = pending.pop_last() {
            match self.leftmost_match(&w) {
                None => done.add_term(w, c),
                Some((pos, k)) => {
                    steps += 1;
                    pending = &pending + &self.rewrite(&w, pos, k, &c);
                }
            }
        }
        Ok(Reduced { normal_form: done, steps })
    }

    pub fn reduce_batch(&self, exec: Exec, polys: &[NCPoly]) -> Vec<Result<NCPoly, NcError>> {
        par::map(exec, polys, |p| self.reduce(p))
    }

    /// Normal form using uniformly random choices of word, rule and
    /// occurrence at every step.
    pub fn reduce_randomized<R: Rng>(&self, p: &NCPoly, rng: &mut R) -> Result<NCPoly, NcError> {
        self.check_letters(p)?;
        let mut cur = p.clone();
        loop {
            let reducible: Vec<Word> = cur.words().filter(|w| !self.is_irreducible(w)).cloned().collect();
            if reducible.is_empty() {
                return Ok(cur);
            }
            let w = &reducible[rng.random_range(0..reducible.len())];
            let matches = self.all_matches(w);
            let (pos, k) = matches[rng.random_range(0..matches.len())];
            let c = cur.remove(w).expect("word present");
            cur = &cur + &self.rewrite(w, pos, k, &c);
        }
    }

    /// Overlap ambiguities `(A B C)` where `A B` and `B C` are leading words
    /// with `B` nonempty, together with the difference of the two complete
    /// reductions. Inclusion ambiguities cannot occur since all leading
    /// words have the same length and are distinct.
    pub fn overlap_ambiguities(&self) -> Result<Vec<Ambiguity>, NcError> {
        let mut out = Vec::new();
        for (a, ra) in self.rules.iter().enumerate() {
            for (b, rb) in self.rules.iter().enumerate() {
                let (la, lb) = (ra.leading.letters(), rb.leading.letters());
                for ov in 1..la.len().min(lb.len()) {
                    if la[la.len() - ov..] != lb[..ov] {
                        continue;
                    }
                    let mut letters = la.to_vec();
                    letters.extend_from_slice(&lb[ov..]);
                    let word = Word::new(letters);
                    let one = ScalarPoly::one();
                    let left = self.reduce(&self.rewrite(&word, 0, a, &one))?;
                    let right = self.reduce(&self.rewrite(&word, la.len() - ov, b, &one))?;
                    let difference = &left - &right;
                    out.push(Ambiguity { word, first_rule: a, second_rule: b, difference });
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone)]
pub struct Ambiguity {
    pub word: Word,
    pub first_rule: usize,
    pub second_rule: usize,
    pub difference: NCPoly,
}

#[derive(Debug, Clone)]
pub struct AmbiguityReport {
    pub resolvable: bool,
    pub difference: NCPoly,
}

/// Resolves `x_d x_d x_{d-1} x_{d-1}` both as `x_d (x_d x_{d-1} x_{d-1})` and
/// as `(x_d x_d x_{d-1}) x_{d-1}` and compares the normal forms exactly.
pub fn check_overlap_ambiguity(system: &ReductionSystem) -> Result<AmbiguityReport, NcError> {
    let d = system.d;
    let word = Word::new(vec![d, d, d - 1, d - 1]);
    let find = |lead: Word| system.rules.iter().position(|r| r.leading == lead).ok_or(NcError::IncompatibleRule { rule: 0 });
    let rule_last = find(Word::new(vec![d, d - 1, d - 1]))?;
    let rule_prev = find(Word::new(vec![d, d, d - 1]))?;
    let one = ScalarPoly::one();
    let via_last = system.reduce(&system.rewrite(&word, 1, rule_last, &one))?;
    let via_prev = system.reduce(&system.rewrite(&word, 0, rule_prev, &one))?;
    let difference = &via_last - &via_prev;
    Ok(AmbiguityReport { resolvable: difference.is_zero(), difference })
}

/// Irreducible words of exact length `degree`, in deglex order.
pub fn enumerate_basis(d: u8, degree: usize) -> Result<Vec<Word>, NcError> {
    enumerate_basis_with(Exec::default(), d, degree)
}

pub fn enumerate_basis_with(exec: Exec, d: u8, degree: usize) -> Result<Vec<Word>, NcError> {
    let system = build_reduction_system(d)?;
    if degree == 0 {
        return Ok(vec![Word::unit()]);
    }
    let forbidden: Vec<&[u8]> = system.rules.iter().map(|r| r.leading.letters()).collect();
    let firsts: Vec<u8> = (1..=d).collect();
    let per_first = par::map(exec, &firsts, |&first| {
        let mut out = Vec::new();
        let mut buf = vec![first];
        extend_avoiding(&mut buf, d, degree, &forbidden, &mut out);
        out
    });
    Ok(per_first.into_iter().flatten().collect())
}

fn extend_avoiding(buf: &mut Vec<u8>, d: u8, degree: usize, forbidden: &[&[u8]], out: &mut Vec<Word>) {
    if forbidden.iter().any(|f| buf.ends_with(f)) {
        return;
    }
    if buf.len() == degree {
        out.push(Word::new(buf.clone()));
        return;
    }
    for k in 1..=d {
        buf.push(k);
        extend_avoiding(buf, d, degree, forbidden, out);
        buf.pop();
    }
}

/// Number of irreducible words of length `degree` without listing them.
/// Transfer count over the last two letters; forbidden words have length 3.
pub fn count_basis(d: u8, degree: usize) -> Result<u128, NcError> {
    let system = build_reduction_system(d)?;
    let n = d as usize;
    if degree <= 2 {
        return Ok((n as u128).pow(degree as u32));
    }
    let forbidden: Vec<&[u8]> = system.rules.iter().map(|r| r.leading.letters()).collect();
    // state (a, b) = last two letters (0-based)
    let mut counts = vec![1u128; n * n];
    for _ in 2..degree {
        let mut next = vec![0u128; n * n];
        for a in 0..n {
            for b in 0..n {
                let cur = counts[a * n + b];
                if cur == 0 {
                    continue;
                }
                for c in 0..n {
                    let tri = [a as u8 + 1, b as u8 + 1, c as u8 + 1];
                    if forbidden.iter().any(|f| *f == tri) {
                        continue;
                    }
                    next[b * n + c] = next[b * n + c].checked_add(cur).ok_or(NcError::Overflow)?;
                }
            }
        }
        counts = next;
    }
    counts.into_iter().try_fold(0u128, |acc, x| acc.checked_add(x).ok_or(NcError::Overflow))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::parse_expr;

    fn brute_force_count(d: u8, degree: usize) -> usize {
        let system = build_reduction_system(d).unwrap();
        let mut count = 0;
        let total = (d as usize).pow(degree as u32);
        for mut code in 0..total {
            let mut letters = Vec::with_capacity(degree);
            for _ in 0..degree {
                letters.push((code % d as usize) as u8 + 1);
                code /= d as usize;
            }
            let w = Word::new(letters);
            if system.rules().iter().all(|r| w.find(&r.leading).is_none()) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn leading_words_for_d4() {
        let s = build_reduction_system(4).unwrap();
        let leads: Vec<String> = s.rules().iter().map(|r| r.leading.to_string()).collect();
        assert_eq!(leads, ["x4 x4 x1", "x4 x4 x2", "x4 x4 x3", "x4 x3 x3"]);
        let s2 = build_reduction_system(2).unwrap();
        let leads2: Vec<String> = s2.rules().iter().map(|r| r.leading.to_string()).collect();
        assert_eq!(leads2, ["x2 x2 x1", "x2 x1 x1"]);
        assert!(matches!(build_reduction_system(1), Err(NcError::DimensionTooSmall { d: 1 })));
    }

    #[test]
    fn rule_replacement_matches_hand_expansion() {
        let s = build_reduction_system(4).unwrap();
        let expected = parse_expr(
            "2 x4 x1 x4 - x1 x4 x4 + mu1 x1 - x1 x2 x2 + 2 x2 x1 x2 - x2 x2 x1 - x1 x3 x3 + 2 x3 x1 x3 - x3 x3 x1",
            4,
        )
        .unwrap();
        assert_eq!(s.reduce(&NCPoly::word(&[4, 4, 1])).unwrap(), expected);
        let irreducible = NCPoly::word(&[1, 2, 3]);
        assert_eq!(s.reduce(&irreducible).unwrap(), irreducible);
    }

    #[test]
    fn relations_reduce_to_zero() {
        for d in 2..=5u8 {
            let s = build_reduction_system(d).unwrap();
            for i in 1..=d {
                assert!(s.reduce(&relation(d, i)).unwrap().is_zero(), "d={d} i={i}");
            }
        }
    }

    #[test]
    fn ambiguity_resolvable() {
        for d in 2..=6u8 {
            let s = build_reduction_system(d).unwrap();
            let report = check_overlap_ambiguity(&s).unwrap();
            assert!(report.resolvable, "d={d}: {}", report.difference);
            let all = s.overlap_ambiguities().unwrap();
            assert_eq!(all.len(), 1);
            assert_eq!(all[0].word, Word::new(vec![d, d, d - 1, d - 1]));
            assert!(all[0].difference.is_zero());
        }
    }

    // Shifting the spectral parameter of one rule leaves the overlap
    // resolvable: the shift enters both reductions as the same multiple of
    // x_i x_i and cancels. The overlap closes for arbitrary parameters.
    #[test]
    fn spectral_shift_stays_resolvable() {
        for d in 2..=5u8 {
            let s = build_reduction_system(d).unwrap();
            for k in 0..d as usize {
                let mut rules = s.rules().to_vec();
                let generator = if k + 1 == d as usize { d } else { k as u8 + 1 };
                rules[k].replacement = &rules[k].replacement + &NCPoly::x(generator);
                let shifted = ReductionSystem::from_rules(d, rules).unwrap();
                let report = check_overlap_ambiguity(&shifted).unwrap();
                assert!(report.resolvable, "d={d} rule={k}: {}", report.difference);
            }
        }
    }

    #[test]
    fn structural_mutation_detected() {
        let s = build_reduction_system(4).unwrap();
        let mut rules = s.rules().to_vec();
        rules[1].replacement = &rules[1].replacement + &NCPoly::x(1);
        let mutated = ReductionSystem::from_rules(4, rules).unwrap();
        let report = check_overlap_ambiguity(&mutated).unwrap();
        assert!(!report.resolvable);
        assert_eq!(report.difference, parse_expr("x2 x1 - x1 x2", 4).unwrap());
    }

    #[test]
    fn incompatible_rule_rejected() {
        let rule = Rule { leading: Word::new(vec![1, 1]), replacement: NCPoly::word(&[2, 1]) };
        assert!(matches!(ReductionSystem::from_rules(2, vec![rule]), Err(NcError::IncompatibleRule { rule: 0 })));
    }

    #[test]
    fn counts_match_brute_force() {
        assert_eq!(enumerate_basis(4, 0).unwrap().len(), 1);
        assert_eq!(enumerate_basis(4, 2).unwrap().len(), 16);
        assert_eq!(enumerate_basis(4, 3).unwrap().len(), 60);
        for d in 2..=5u8 {
            for degree in 0..=6 {
                let oracle = brute_force_count(d, degree);
                let words = enumerate_basis(d, degree).unwrap();
                assert_eq!(words.len(), oracle, "d={d} degree={degree}");
                assert_eq!(count_basis(d, degree).unwrap() as usize, oracle);
                assert!(words.windows(2).all(|p| p[0] < p[1]));
            }
        }
    }

    #[test]
    fn sequential_and_parallel_enumeration_agree() {
        let a = enumerate_basis_with(Exec::Sequential, 4, 5).unwrap();
        let b = enumerate_basis_with(Exec::Parallel, 4, 5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn step_count_bounded_by_word_count() {
        let s = build_reduction_system(4).unwrap();
        let p = NCPoly::word(&[4, 4, 4, 3, 3, 1]);
        let r = s.reduce_counted(&p).unwrap();
        let bound: usize = (0..=6).map(|k| 4usize.pow(k)).sum();
        assert!(r.steps > 0 && r.steps <= bound);
    }
}
