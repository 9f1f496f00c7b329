use esd_core::scan::format_value;
use esd_core::{ChannelKind, Complex, CriticalResult, ScanRow, XElements};
use serde_json::{json, Value};

pub struct Evaluation {
    pub channel: Option<ChannelKind>,
    pub r: f64,
    pub theta: f64,
    pub p: Option<f64>,
    pub x_elements: XElements,
    pub concurrence: f64,
    pub concurrence_eig: Option<f64>,
}

impl Evaluation {
    pub fn render(&self, json: bool) -> String {
        if json {
            let mut obj = json!({
                "channel": self.channel.map(|k| k.token()),
                "r": self.r,
                "theta": self.theta,
                "p": self.p,
                "x_elements": x_json(&self.x_elements),
                "concurrence": self.concurrence,
            });
            if let Some(c) = self.concurrence_eig {
                obj["concurrence_eig"] = json!(c);
            }
            return format!(
                "{}\n",
                serde_json::to_string_pretty(&obj).expect("finite values")
            );
        }

        let xe = &self.x_elements;
        let mut lines = vec![
            format!(
                "channel: {}",
                self.channel.map_or("none".to_string(), |k| k.to_string())
            ),
            format!("r: {}", format_value(self.r)),
            format!("theta: {}", format_value(self.theta)),
        ];
        if let Some(p) = self.p {
            lines.push(format!("p: {}", format_value(p)));
        }
        lines.extend([
            format!("x: {}", format_value(xe.x)),
            format!("y: {}", format_value(xe.y)),
            format!("z: {}", format_value(xe.z)),
            format!("w: {}", format_value(xe.w)),
            format!("u: {}", complex_text(xe.u)),
            format!("v: {}", complex_text(xe.v)),
            format!("concurrence: {}", format_value(self.concurrence)),
        ]);
        if let Some(c) = self.concurrence_eig {
            lines.push(format!("concurrence_eig: {}", format_value(c)));
        }
        lines.join("\n") + "\n"
    }
}

pub struct PcReport {
    pub channel: ChannelKind,
    pub r: f64,
    pub theta: f64,
    pub method: &'static str,
    pub result: CriticalResult,
}

impl PcReport {
    pub fn render(&self, json: bool) -> String {
        let status = self.result.status().to_string();
        let pc = self.result.pc();
        if json {
            let obj = json!({
                "channel": self.channel.token(),
                "r": self.r,
                "theta": self.theta,
                "method": self.method,
                "status": status,
                "pc": pc,
            });
            return format!(
                "{}\n",
                serde_json::to_string_pretty(&obj).expect("finite values")
            );
        }
        let mut out = format!(
            "channel: {}\nr: {}\ntheta: {}\nmethod: {}\nstatus: {status}\n",
            self.channel,
            format_value(self.r),
            format_value(self.theta),
            self.method
        );
        if let Some(pc) = pc {
            out.push_str(&format!("pc: {}\n", format_value(pc)));
        }
        out
    }
}

pub fn rows_json(rows: &[ScanRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|row| {
                json!({
                    "theta": row.theta,
                    "p": row.p,
                    "r": row.r,
                    "concurrence": row.concurrence,
                })
            })
            .collect(),
    )
}

fn x_json(xe: &XElements) -> Value {
    let c = |z: Complex| json!({ "re": z.re, "im": z.im });
    json!({
        "x": xe.x,
        "y": xe.y,
        "z": xe.z,
        "w": xe.w,
        "u": c(xe.u),
        "v": c(xe.v),
    })
}

fn complex_text(z: Complex) -> String {
    if z.im == 0.0 {
        format_value(z.re)
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{}{sign}{}i", format_value(z.re), format_value(z.im.abs()))
    }
}
