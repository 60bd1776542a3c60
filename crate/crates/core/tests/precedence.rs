//! The parser against an independent precedence-climbing reference.

use fock_core::dsl::{parse_expr, IndexedOp, OpExpr};
use fock_core::ealgebra::Generator;
use fock_core::Scalar;
use proptest::prelude::*;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Scalar),
    Gen(Generator),
    Idx(IndexedOp, i64),
    Op(char),
    Open,
    Close,
}

fn tokenize(text: &str) -> Vec<Tok> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut i = 0;
    let number = |i: &mut usize| {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect::<String>().parse::<i64>().unwrap()
    };
    while i < chars.len() {
        let c = chars[i];
        let unary = matches!(out.last(), None | Some(Tok::Op(_)) | Some(Tok::Open));
        if c.is_ascii_digit() || (c == '-' && unary) {
            let neg = c == '-';
            if neg {
                i += 1;
            }
            let n = number(&mut i);
            let d = if i < chars.len() && chars[i] == '/' {
                i += 1;
                number(&mut i)
            } else {
                1
            };
            out.push(Tok::Num(Scalar::ratio(if neg { -n } else { n }, d)));
        } else if "+-*^".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c == '(' {
            out.push(Tok::Open);
            i += 1;
        } else if c == ')' {
            out.push(Tok::Close);
            i += 1;
        } else if "PQHL".contains(c) {
            let op = IndexedOp::ALL.into_iter().find(|o| o.name().starts_with(c)).unwrap();
            i += 2;
            let neg = chars[i] == '-';
            if neg {
                i += 1;
            }
            let k = number(&mut i);
            i += 1;
            out.push(Tok::Idx(op, if neg { -k } else { k }));
        } else {
            let rest: String = chars[i..].iter().collect();
            let g = if rest.starts_with("Km1") {
                Generator::Km1
            } else if rest.starts_with("K1") {
                Generator::K1
            } else if c == 'E' {
                Generator::E
            } else {
                Generator::F
            };
            i += g.name().len();
            out.push(Tok::Gen(g));
        }
    }
    out
}

struct Pratt {
    toks: Vec<Tok>,
    pos: usize,
}

impl Pratt {
    fn next(&mut self) -> Tok {
        self.pos += 1;
        self.toks[self.pos - 1].clone()
    }

    fn primary(&mut self) -> OpExpr {
        match self.next() {
            Tok::Num(s) => OpExpr::Scalar(s),
            Tok::Gen(g) => OpExpr::Gen(g),
            Tok::Idx(op, k) => OpExpr::Indexed(op, k),
            Tok::Open => {
                let e = self.expr(0);
                assert_eq!(self.next(), Tok::Close);
                e
            }
            t => panic!("unexpected {t:?}"),
        }
    }

    fn expr(&mut self, min_bp: u8) -> OpExpr {
        let mut lhs = self.primary();
        while let Some(Tok::Op(op)) = self.toks.get(self.pos).cloned() {
            let bp = match op {
                '+' | '-' => 1,
                '*' => 3,
                _ => 5,
            };
            if bp < min_bp {
                break;
            }
            self.pos += 1;
            lhs = match op {
                '^' => match self.next() {
                    Tok::Num(n) => OpExpr::power(lhs, n.to_i64().unwrap() as u32),
                    t => panic!("bad exponent {t:?}"),
                },
                '+' => OpExpr::sum(lhs, self.expr(bp + 1)),
                '-' => OpExpr::sum(lhs, OpExpr::negated(self.expr(bp + 1))),
                _ => OpExpr::product(lhs, self.expr(bp + 1)),
            };
        }
        lhs
    }
}

fn reference(text: &str) -> OpExpr {
    let mut p = Pratt { toks: tokenize(text), pos: 0 };
    let e = p.expr(0);
    assert_eq!(p.pos, p.toks.len(), "trailing tokens in {text}");
    e
}

fn atom_text() -> impl Strategy<Value = String> {
    prop_oneof![
        prop::sample::select(vec!["K1", "Km1", "E", "F", "P[2]", "Q[1]", "H[-3]", "L[2]"]).prop_map(String::from),
        (0i64..9, 1i64..4).prop_map(|(n, d)| if d == 1 { n.to_string() } else { format!("{n}/{d}") }),
    ]
}

fn expr_text() -> impl Strategy<Value = String> {
    let factor = || {
        (atom_text(), prop::option::of(0u32..4)).prop_map(|(a, p)| match p {
            Some(n) => format!("{a}^{n}"),
            None => a,
        })
    };
    let chunk = prop_oneof![
        3 => factor(),
        1 => prop::collection::vec((factor(), prop::sample::select(vec!["+", "-", "*"])), 1..4).prop_map(|v| {
            let mut s = String::from("(");
            for (i, (f, op)) in v.iter().enumerate() {
                if i > 0 {
                    s.push_str(op);
                }
                s.push_str(f);
            }
            s.push(')');
            s
        }),
    ];
    prop::collection::vec((chunk, prop::sample::select(vec![" + ", " - ", "*"])), 1..7).prop_map(|v| {
        let mut s = String::new();
        for (i, (c, op)) in v.iter().enumerate() {
            if i > 0 {
                s.push_str(op);
            }
            s.push_str(c);
        }
        s
    })
}

#[test]
fn precedence_example() {
    let got = parse_expr("K1 + E*F^2").unwrap();
    let want = OpExpr::sum(
        OpExpr::Gen(Generator::K1),
        OpExpr::product(OpExpr::Gen(Generator::E), OpExpr::power(OpExpr::Gen(Generator::F), 2)),
    );
    assert_eq!(got, want);
    assert_eq!(reference("K1 + E*F^2"), want);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn matches_reference_parser(text in expr_text()) {
        prop_assert_eq!(parse_expr(&text).unwrap(), reference(&text), "{}", text);
    }
}
