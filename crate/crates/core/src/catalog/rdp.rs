use super::{Characteristic, ExpectedRecord, Family};

type Check = fn(&[u32]) -> Result<(), String>;
type Build = fn(u32, &[u32]) -> String;

/// A rational double point family given by an equation template.
pub struct RdpFamily {
    pub id: &'static str,
    pub params: &'static [&'static str],
    pub characteristic: Characteristic,
    check: Check,
    build: Build,
}

impl Family for RdpFamily {
    fn id(&self) -> &'static str {
        self.id
    }

    fn param_names(&self) -> &'static [&'static str] {
        self.params
    }

    fn characteristic(&self) -> Characteristic {
        self.characteristic.clone()
    }

    fn check_params(&self, params: &[u32]) -> Result<(), String> {
        (self.check)(params)
    }

    fn equation_text(&self, p: u32, params: &[u32]) -> Vec<String> {
        vec![(self.build)(p, params)]
    }
}

fn none(_: &[u32]) -> Result<(), String> {
    Ok(())
}

fn n_at_least_1(v: &[u32]) -> Result<(), String> {
    if v[0] >= 1 {
        Ok(())
    } else {
        Err("n >= 1 required".into())
    }
}

fn n_at_least_2(v: &[u32]) -> Result<(), String> {
    if v[0] >= 2 {
        Ok(())
    } else {
        Err("n >= 2 required".into())
    }
}

fn r_in_range(v: &[u32]) -> Result<(), String> {
    let (n, r) = (v[0], v[1]);
    if r >= 1 && r + 2 <= n {
        Ok(())
    } else {
        Err(format!(
            "r must satisfy 1 <= r <= n-2, got n = {n}, r = {r}"
        ))
    }
}

fn family(
    id: &'static str,
    params: &'static [&'static str],
    characteristic: Characteristic,
    check: Check,
    build: Build,
) -> RdpFamily {
    RdpFamily {
        id,
        params,
        characteristic,
        check,
        build,
    }
}

pub(super) fn families() -> Vec<RdpFamily> {
    use Characteristic::*;
    vec![
        family("A_n", &["n"], Any, n_at_least_1, |_, v| {
            format!("z^{}+x*y", v[0] + 1)
        }),
        family("D_n", &["n"], Above(2), n_at_least_2, |_, v| {
            format!("z^2+x^2*y+y^{}", v[0] + 1)
        }),
        family("E_6", &[], Above(3), none, |_, _| "z^2+x^3+y^4".into()),
        family("E_7", &[], Above(3), none, |_, _| "z^2+x^3+x*y^3".into()),
        family("E_8", &[], Above(5), none, |_, _| "z^2+x^3+y^5".into()),
        family("D_2n^0", &["n"], OneOf(&[2]), n_at_least_2, |_, v| {
            format!("z^2+x^2*y+x*y^{}", v[0])
        }),
        family("D_2n^r", &["n", "r"], OneOf(&[2]), r_in_range, |_, v| {
            format!("z^2+x^2*y+x*y^{}+x*y^{}*z", v[0], v[0] - v[1])
        }),
        family("D_2n^{n-1}", &["n"], OneOf(&[2]), n_at_least_2, |_, v| {
            format!("z^2+x^2*y+x*y^{}+x*y*z", v[0])
        }),
        family("D_2n+1^0", &["n"], OneOf(&[2]), n_at_least_2, |_, v| {
            format!("z^2+x^2*y+y^{}*z", v[0])
        }),
        family("D_2n+1^r", &["n", "r"], OneOf(&[2]), r_in_range, |_, v| {
            format!("z^2+x^2*y+y^{}*z+x*y^{}*z", v[0], v[0] - v[1])
        }),
        family("D_2n+1^{n-1}", &["n"], OneOf(&[2]), n_at_least_2, |_, v| {
            format!("z^2+x^2*y+y^{}*z+x*y*z", v[0])
        }),
        family("E_6^0", &[], OneOf(&[2, 3]), none, |p, _| {
            if p == 2 {
                "z^2+x^3+y^2*z"
            } else {
                "z^2+x^3+y^4"
            }
            .into()
        }),
        family("E_6^1", &[], OneOf(&[2, 3]), none, |p, _| {
            if p == 2 {
                "z^2+x^3+y^2*z+x*y*z"
            } else {
                "z^2+x^3+y^4+x^2*y^2"
            }
            .into()
        }),
        family("E_7^0", &[], OneOf(&[2, 3]), none, |_, _| {
            "z^2+x^3+x*y^3".into()
        }),
        family("E_7^1", &[], OneOf(&[2, 3]), none, |p, _| {
            if p == 2 {
                "z^2+x^3+x*y^3+x^2*y*z"
            } else {
                "z^2+x^3+x*y^3+x^2*y^2"
            }
            .into()
        }),
        family("E_7^2", &[], OneOf(&[2]), none, |_, _| {
            "z^2+x^3+x*y^3+y^3*z".into()
        }),
        family("E_7^3", &[], OneOf(&[2]), none, |_, _| {
            "z^2+x^3+x*y^3+x*y*z".into()
        }),
        family("E_8^0", &[], OneOf(&[2, 3, 5]), none, |_, _| {
            "z^2+x^3+y^5".into()
        }),
        family("E_8^1", &[], OneOf(&[2, 3, 5]), none, |p, _| {
            match p {
                2 => "z^2+x^3+y^5+x*y^3*z",
                3 => "z^2+x^3+y^5+x^2*y^3",
                _ => "z^2+x^3+y^5+x*y^4",
            }
            .into()
        }),
        family("E_8^2", &[], OneOf(&[2, 3]), none, |p, _| {
            if p == 2 {
                "z^2+x^3+y^5+x*y^2*z"
            } else {
                "z^2+x^3+y^5+x^2*y^2"
            }
            .into()
        }),
        family("E_8^3", &[], OneOf(&[2]), none, |_, _| {
            "z^2+x^3+y^5+y^3*z".into()
        }),
        family("E_8^4", &[], OneOf(&[2]), none, |_, _| {
            "z^2+x^3+y^5+x*y*z".into()
        }),
    ]
}

type Predicate = fn(u32, &[u32]) -> bool;
type Grid = fn(u32) -> Vec<Vec<u32>>;

/// One row of the RDP table.
#[derive(Clone)]
pub struct TableRow {
    pub family: &'static str,
    pub characteristic: Characteristic,
    /// Type column, TeX.
    pub type_tex: &'static str,
    /// Equation column, TeX.
    pub equation_tex: &'static str,
    pub expected: ExpectedRecord,
    predicate: Predicate,
    grid: Grid,
}

impl std::fmt::Debug for TableRow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TableRow")
            .field("family", &self.family)
            .field("p", &self.characteristic.describe())
            .field("expected", &self.expected)
            .finish()
    }
}

impl TableRow {
    pub fn applies(&self, p: u32, params: &[u32]) -> bool {
        self.characteristic.admits(p) && (self.predicate)(p, params)
    }

    pub fn parameter_grid(&self, n_max: u32) -> Vec<Vec<u32>> {
        (self.grid)(n_max)
    }
}

fn always(_: u32, _: &[u32]) -> bool {
    true
}

fn no_params(_: u32) -> Vec<Vec<u32>> {
    vec![vec![]]
}

fn n_from_1(n_max: u32) -> Vec<Vec<u32>> {
    (1..=n_max).map(|n| vec![n]).collect()
}

fn n_from_2(n_max: u32) -> Vec<Vec<u32>> {
    (2..=n_max).map(|n| vec![n]).collect()
}

fn n_and_r(n_max: u32) -> Vec<Vec<u32>> {
    (2..=n_max)
        .flat_map(|n| (1..n.saturating_sub(1)).map(move |r| vec![n, r]))
        .collect()
}

/// Parses five Y/N flags in column order: F-pure, F-regular, F-liftable, RET, LET.
fn rec(flags: &str) -> ExpectedRecord {
    let b: Vec<bool> = flags.chars().map(|c| c == 'Y').collect();
    ExpectedRecord {
        f_pure: b[0],
        f_regular_ref: b[1],
        f_liftable: b[2],
        ret_ref: b[3],
        let_ref: b[4],
    }
}

/// The RDP table, row by row.
pub fn table_rows() -> Vec<TableRow> {
    use Characteristic::*;
    let row = |family,
               characteristic,
               type_tex,
               equation_tex,
               flags: &str,
               predicate: Predicate,
               grid: Grid| TableRow {
        family,
        characteristic,
        type_tex,
        equation_tex,
        expected: rec(flags),
        predicate,
        grid,
    };
    let two = || OneOf(&[2]);
    let three = || OneOf(&[3]);
    vec![
        row(
            "A_n",
            Any,
            r"A_{n} (p\nmid(n+1))",
            "z^{n+1}+xy",
            "YYYYY",
            |p, v| v.first().is_some_and(|n| (n + 1) % p != 0),
            n_from_1,
        ),
        row(
            "A_n",
            Any,
            r"A_{n} (p|(n+1))",
            "z^{n+1}+xy",
            "YYYNY",
            |p, v| v.first().is_some_and(|n| (n + 1) % p == 0),
            n_from_1,
        ),
        row(
            "D_n",
            Above(2),
            "D_{n}",
            "z^2+x^{2}y+y^{n+1}",
            "YYYYY",
            always,
            n_from_2,
        ),
        row(
            "E_6",
            Above(3),
            "E_{6}",
            "z^2+x^3+y^4",
            "YYYYY",
            always,
            no_params,
        ),
        row(
            "E_7",
            Above(3),
            "E_{7}",
            "z^2+x^3+xy^3",
            "YYYYY",
            always,
            no_params,
        ),
        row(
            "E_8",
            Above(5),
            "E_{8}",
            "z^2+x^3+y^5",
            "YYYYY",
            always,
            no_params,
        ),
        row(
            "D_2n^0",
            two(),
            r"D_{2n}^{0} (n\geq 2)",
            "z^2+x^{2}y+xy^n",
            "NNNNN",
            always,
            n_from_2,
        ),
        row(
            "D_2n^r",
            two(),
            r"D_{2n}^{r} (r=1,\ldots,n-2)",
            "z^2+x^{2}y+xy^n+xy^{n-r}z",
            "NNNNN",
            always,
            n_and_r,
        ),
        row(
            "D_2n^{n-1}",
            two(),
            r"D_{2n}^{n-1} (n\geq 2)",
            "z^2+x^{2}y+xy^n+xyz",
            "YNYNY",
            always,
            n_from_2,
        ),
        row(
            "D_2n+1^0",
            two(),
            r"D_{2n+1}^{0} (n\geq 2)",
            "z^2+x^2y+y^nz",
            "NNNNN",
            always,
            n_from_2,
        ),
        row(
            "D_2n+1^r",
            two(),
            r"D_{2n+1}^{r} (r=1,\ldots,n-2)",
            "z^2+x^2y+y^nz+xy^{n-r}z",
            "NNNNN",
            always,
            n_and_r,
        ),
        row(
            "D_2n+1^{n-1}",
            two(),
            r"D_{2n+1}^{n-1} (n\geq 2)",
            "z^2+x^2y+y^nz+xyz",
            "YNYNY",
            always,
            n_from_2,
        ),
        row(
            "E_6^0",
            two(),
            "E_{6}^{0}",
            "z^2+x^3+y^2z",
            "NNNNN",
            always,
            no_params,
        ),
        row(
            "E_6^1",
            two(),
            "E_{6}^{1}",
            "z^2+x^3+y^2z+xyz",
            "YNYYY",
            always,
            no_params,
        ),
        row(
            "E_7^0",
            two(),
            "E_{7}^{0}",
            "z^2+x^3+xy^3",
            "NNNNN",
            always,
            no_params,
        ),
        row(
            "E_7^1",
            two(),
            "E_{7}^{1}",
            "z^2+x^3+xy^3+x^2yz",
            "NNNNN",
            always,
            no_params,
        ),
        row(
            "E_7^2",
            two(),
            "E_{7}^{2}",
            "z^2+x^3+xy^3+y^3z",
            "NNNNN",
            always,
            no_params,
        ),
        row(
            "E_7^3",
            two(),
            "E_{7}^{3}",
            "z^2+x^3+xy^3+xyz",
            "YNYYY",
            always,
            no_params,
        ),
        row(
            "E_8^0",
            two(),
            "E_{8}^{0}",
            "z^2+x^3+y^5",
            "NNNNN",
            always,
            no_params,
        ),
        row(
            "E_8^1",
            two(),
            "E_{8}^{1}",
            "z^2+x^3+y^5+xy^3z",
            "NNNNN",
            always,
            no_params,
        ),
        row(
            "E_8^2",
            two(),
            "E_{8}^{2}",
            "z^2+x^3+y^5+xy^2z",
            "NNNNN",
            always,
            no_params,
        ),
        row(
            "E_8^3",
            two(),
            "E_{8}^{3}",
            "z^2+x^3+y^5+y^3z",
            "NNNNN",
            always,
            no_params,
        ),
        row(
            "E_8^4",
            two(),
            "E_{8}^{4}",
            "z^2+x^3+y^5+xyz",
            "YNYYY",
            always,
            no_params,
        ),
        row(
            "E_6^0",
            three(),
            "E_{6}^{0}",
            "z^2+x^3+y^4",
            "NNNNN",
            always,
            no_params,
        ),
        row(
            "E_6^1",
            three(),
            "E_{6}^{1}",
            "z^2+x^3+y^4+x^2y^2",
            "YNYNY",
            always,
            no_params,
        ),
        row(
            "E_7^0",
            three(),
            "E_{7}^{0}",
            "z^2+x^3+xy^3",
            "NNNNN",
            always,
            no_params,
        ),
        row(
            "E_7^1",
            three(),
            "E_{7}^{1}",
            "z^2+x^3+xy^3+x^2y^2",
            "YNYYY",
            always,
            no_params,
        ),
        row(
            "E_8^0",
            three(),
            "E_{8}^{0}",
            "z^2+x^3+y^5",
            "NNNNN",
            always,
            no_params,
        ),
        row(
            "E_8^1",
            three(),
            "E_{8}^{1}",
            "z^2+x^3+y^5+x^2y^3",
            "NNNNN",
            always,
            no_params,
        ),
        row(
            "E_8^2",
            three(),
            "E_{8}^{2}",
            "z^2+x^3+y^5+x^2y^2",
            "YNYYY",
            always,
            no_params,
        ),
        row(
            "E_8^0",
            OneOf(&[5]),
            "E_{8}^{0}",
            "z^2+x^3+y^5",
            "NNNNN",
            always,
            no_params,
        ),
        row(
            "E_8^1",
            OneOf(&[5]),
            "E_{8}^{1}",
            "z^2+x^3+y^5+xy^4",
            "YNNYY",
            always,
            no_params,
        ),
    ]
}
