use serde::{Deserialize, Serialize};

use super::{MetricGroup, RibbonPointedData};
use crate::abelian::FinAbGroup;
use crate::error::Result;

/// Wire form `{"orders": [...], "modulus": M, "q": [...], "chi": [...]}`.
///
/// Tables are indexed in mixed-radix order, last coordinate fastest. `modulus`
/// may be any positive integer; values are normalized to `M = 2·exp(G)` on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricJson {
    pub orders: Vec<u64>,
    pub modulus: u64,
    pub q: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<Vec<i64>>,
}

impl MetricJson {
    pub fn metric(&self) -> Result<MetricGroup> {
        MetricGroup::new(
            FinAbGroup::new(self.orders.clone())?,
            self.modulus,
            self.q.clone(),
        )
    }

    /// Ribbon data when a character table is present.
    pub fn ribbon(&self) -> Result<Option<RibbonPointedData>> {
        match &self.chi {
            None => Ok(None),
            Some(chi) => Ok(Some(RibbonPointedData::new(
                self.metric()?,
                self.modulus,
                chi.clone(),
            )?)),
        }
    }
}

impl From<&MetricGroup> for MetricJson {
    fn from(m: &MetricGroup) -> Self {
        MetricJson {
            orders: m.group().orders().to_vec(),
            modulus: m.modulus(),
            q: m.table().iter().map(|&e| e as i64).collect(),
            chi: None,
        }
    }
}

impl From<&RibbonPointedData> for MetricJson {
    fn from(r: &RibbonPointedData) -> Self {
        MetricJson {
            chi: Some(r.chi_table().iter().map(|&e| e as i64).collect()),
            ..MetricJson::from(r.base())
        }
    }
}
