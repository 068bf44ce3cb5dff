//! Line-oriented input format.
//!
//! ```text
//! # comment
//! param c 10
//! param p 2
//! param pd 0.6
//! param s 10
//! component 0.6 0.0        # existence, then location coordinates
//! component 0.6 20.0
//! x 0 0                    # a point of the first set
//! y 0 0                    # a point of the second set
//! ```
//!
//! Blank lines and text after `#` are ignored. Keys may appear in any order;
//! a repeated `param` key keeps the last value.

use crate::CliError;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Scenario {
    pub cutoff: Option<f64>,
    pub order: Option<f64>,
    pub detection_probability: Option<f64>,
    pub sensing_cost: Option<f64>,
    pub components: Vec<(f64, Vec<f64>)>,
    pub x: Vec<Vec<f64>>,
    pub y: Vec<Vec<f64>>,
}

fn number(token: &str, line: usize) -> Result<f64, CliError> {
    token
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| CliError::Parse(format!("line {line}: '{token}' is not a finite number")))
}

fn numbers(tokens: &[&str], line: usize) -> Result<Vec<f64>, CliError> {
    tokens.iter().map(|t| number(t, line)).collect()
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut scenario = Scenario::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            match tokens[0] {
                "param" => {
                    let [_, key, value] = tokens[..] else {
                        return Err(CliError::Parse(format!("line {line}: expected 'param <key> <value>'")));
                    };
                    let value = number(value, line)?;
                    match key {
                        "c" => scenario.cutoff = Some(value),
                        "p" => scenario.order = Some(value),
                        "pd" => scenario.detection_probability = Some(value),
                        "s" => scenario.sensing_cost = Some(value),
                        other => return Err(CliError::Parse(format!("line {line}: unknown parameter '{other}'"))),
                    }
                }
                "component" => {
                    if tokens.len() < 3 {
                        return Err(CliError::Parse(format!(
                            "line {line}: expected 'component <r> <x1> [x2 ...]'"
                        )));
                    }
                    let values = numbers(&tokens[1..], line)?;
                    scenario.components.push((values[0], values[1..].to_vec()));
                }
                "x" | "y" => {
                    if tokens.len() < 2 {
                        return Err(CliError::Parse(format!("line {line}: point has no coordinates")));
                    }
                    let point = numbers(&tokens[1..], line)?;
                    if tokens[0] == "x" {
                        scenario.x.push(point);
                    } else {
                        scenario.y.push(point);
                    }
                }
                other => return Err(CliError::Parse(format!("line {line}: unknown directive '{other}'"))),
            }
        }
        Ok(scenario)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_directives() {
        let s = Scenario::parse(
            "# demo\nparam c 10\nparam pd 0.6 # trailing\n\ncomponent 0.6 0\ncomponent 0.5 20 1\nx 1 2\ny 3 4\ny 5 6\n",
        )
        .unwrap();
        assert_eq!(s.cutoff, Some(10.0));
        assert_eq!(s.detection_probability, Some(0.6));
        assert_eq!(s.order, None);
        assert_eq!(s.components, vec![(0.6, vec![0.0]), (0.5, vec![20.0, 1.0])]);
        assert_eq!(s.x, vec![vec![1.0, 2.0]]);
        assert_eq!(s.y.len(), 2);
    }

    #[test]
    fn rejects_malformed_lines() {
        for bad in ["param c", "param q 1", "param c ten", "component 0.5", "x", "z 1 2", "x 1 inf"] {
            assert!(matches!(Scenario::parse(bad), Err(CliError::Parse(_))), "{bad}");
        }
    }
}
