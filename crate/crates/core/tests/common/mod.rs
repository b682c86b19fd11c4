/// Count reduced forms of discriminant `-4m` by looping over `a` and `b`.
pub fn naive_class_number(m: u64) -> usize {
    let m = m as i64;
    let mut count = 0;
    let mut a = 1i64;
    while 3 * a * a <= 4 * m {
        for b in -a..=a {
            let num = b * b + 4 * m;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || ((b.abs() == a || a == c) && b < 0) {
                continue;
            }
            if num_integer::gcd(num_integer::gcd(a, b), c) == 1 {
                count += 1;
            }
        }
        a += 1;
    }
    count
}

