package shop.shipping;

public class Shipment {
    private String city;
    private boolean dispatched;

    public Shipment(String city) {
        this.city = city;
    }

    // @feature("delivery")
    public void markDispatched() {
        dispatched = true;
    }

    // @feature("delivery")
    public boolean isDispatched() {
        return dispatched;
    }

    // @feature("delivery")
    public String destination() {
        return city;
    }
}
