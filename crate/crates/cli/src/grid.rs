/// `lo:hi:count`, inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl std::str::FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, count] = parts[..] else {
            return Err(format!("expected lo:hi:count, got `{s}`"));
        };
        let lo: f64 = lo.trim().parse().map_err(|e| format!("bad lo `{lo}`: {e}"))?;
        let hi: f64 = hi.trim().parse().map_err(|e| format!("bad hi `{hi}`: {e}"))?;
        let count: usize = count.trim().parse().map_err(|e| format!("bad count `{count}`: {e}"))?;
        if !(lo >= 0.0 && lo.is_finite() && hi.is_finite()) {
            return Err("range bounds must be finite with lo >= 0".into());
        }
        if hi <= lo {
            return Err("range needs hi > lo".into());
        }
        if count < 2 {
            return Err("range needs count >= 2".into());
        }
        Ok(Self { lo, hi, count })
    }
}

impl Range {
    pub fn points(&self, log: bool) -> Result<Vec<f64>, String> {
        let n = self.count - 1;
        if log {
            if self.lo <= 0.0 {
                return Err("--log needs lo > 0".into());
            }
            let ratio = self.hi / self.lo;
            Ok((0..=n)
                .map(|k| match k {
                    0 => self.lo,
                    k if k == n => self.hi,
                    k => self.lo * ratio.powf(k as f64 / n as f64),
                })
                .collect())
        } else {
            let step = (self.hi - self.lo) / n as f64;
            Ok((0..=n)
                .map(|k| if k == n { self.hi } else { self.lo + step * k as f64 })
                .collect())
        }
    }
}

/// Comma-separated positive reals.
#[derive(Debug, Clone, PartialEq)]
pub struct XList(pub Vec<f64>);

impl std::str::FromStr for XList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        parse_x_list(s).map(XList)
    }
}

pub fn parse_x_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|p| {
            let v: f64 = p.trim().parse().map_err(|e| format!("bad x `{p}`: {e}"))?;
            if v > 0.0 && v.is_finite() {
                Ok(v)
            } else {
                Err(format!("x values must be positive and finite, got {v}"))
            }
        })
        .collect()
}

pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    Range { lo, hi, count: n }.points(true).expect("positive bounds")
}
