package shop.billing;

public class TaxTable {
    // @feature("checkout")
    public static int taxOn(int amount) {
        if (amount > 1000) {
            return amount / 4;
        }
        return amount / 5;
    }
}
