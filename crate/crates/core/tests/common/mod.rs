//! Exact-count oracle: pushes a finite population through the two verdict
//! stages with integer arithmetic only.

#![allow(dead_code)]

pub const POPULATION: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PopulationCounts {
    pub true_positive: u64,
    pub false_positive: u64,
    pub true_negative: u64,
    pub false_negative: u64,
}

impl PopulationCounts {
    pub fn ppv(&self) -> Option<f64> {
        let pos = self.true_positive + self.false_positive;
        (pos > 0).then(|| self.true_positive as f64 / pos as f64)
    }

    pub fn npv(&self) -> Option<f64> {
        let neg = self.true_negative + self.false_negative;
        (neg > 0).then(|| self.true_negative as f64 / neg as f64)
    }

    pub fn p_positive(&self) -> f64 {
        (self.true_positive + self.false_positive) as f64 / POPULATION as f64
    }
}

/// Parameters given as integer numerators over `denominator`, which must
/// divide the population in a way that keeps every cell integral
/// (denominator² must divide 10^6, so 10, 100 or 1000).
pub fn enumerate(prior: u64, sensitivity: u64, specificity: u64, denominator: u64) -> PopulationCounts {
    assert_eq!(POPULATION % (denominator * denominator), 0);
    assert!(prior <= denominator && sensitivity <= denominator && specificity <= denominator);
    let guilty = POPULATION / denominator * prior;
    let innocent = POPULATION - guilty;
    let true_positive = guilty / denominator * sensitivity;
    let false_positive = innocent / denominator * (denominator - specificity);
    let true_negative = innocent / denominator * specificity;
    let false_negative = guilty / denominator * (denominator - sensitivity);
    assert_eq!(true_positive + false_negative, guilty);
    assert_eq!(false_positive + true_negative, innocent);
    PopulationCounts {
        true_positive,
        false_positive,
        true_negative,
        false_negative,
    }
}
